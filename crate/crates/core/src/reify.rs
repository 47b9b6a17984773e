//! Reification of a program and an interpretation as ground facts.
//!
//! Labels: rules are `r1..rn` in file order; literals `l1..` are interned by
//! printed form, first in rule order (head, positive body, negative body)
//! and then over the sorted interpretation, so a ground literal of the
//! program and the same literal in the interpretation share a label.
//! Predicate symbols are `p_<name>`, strongly negated ones `n_<name>`, with
//! `_<arity>` appended when a name occurs with several arities. Variables
//! are `v_<Name>`, arithmetic expressions `e1..`, and comparison operators
//! `b_eq`, `b_neq`, `b_leq`, `b_lt`, `b_geq`, `b_gt`. Constants stand for
//! themselves.
//!
//! Comparisons are reified as body literals over the operator labels. When
//! the program has comparisons, the facts also carry the tables the
//! meta-program needs to evaluate them: `num/1`, `plus/3` and `times/3`
//! over `0..M` and `cmp/3` for every true comparison between values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{ArithOp, BodyAtom, Builtin, CmpOp, Constant, Eps, Interpretation, Literal, Program, Rule, Term};
use crate::parser::parse_program;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub pred: String,
    pub args: Vec<Constant>,
}

impl Fact {
    pub fn new(pred: &str, args: Vec<Constant>) -> Self {
        Fact {
            pred: pred.to_owned(),
            args,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (k, a) in self.args.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        f.write_str(".")
    }
}

fn sym(s: &str) -> Constant {
    Constant::sym(s)
}

fn num(n: usize) -> Constant {
    Constant::Num(n as u64)
}

pub fn cmp_label(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "b_eq",
        CmpOp::Neq => "b_neq",
        CmpOp::Leq => "b_leq",
        CmpOp::Lt => "b_lt",
        CmpOp::Geq => "b_geq",
        CmpOp::Gt => "b_gt",
    }
}

/// The injective labelling of rules, literals, predicate symbols,
/// variables and arithmetic expressions.
#[derive(Clone, Debug, Default)]
pub struct LabelTable {
    rules: usize,
    literals: BTreeMap<String, String>,
    literal_order: Vec<String>,
    by_label: BTreeMap<String, Literal>,
    eps: BTreeMap<Eps, String>,
    vars: BTreeMap<String, String>,
    exprs: BTreeMap<String, String>,
}

fn builtin_key(b: &Builtin) -> String {
    b.to_string()
}

impl LabelTable {
    pub fn new(p: &Program, i: &Interpretation) -> Result<Self> {
        let mut t = LabelTable {
            rules: p.rules.len(),
            ..LabelTable::default()
        };
        let mut arities: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
        let all_literals: Vec<&Literal> = p.rules.iter().flat_map(Rule::literals).chain(i.iter()).collect();
        for l in &all_literals {
            arities.entry(&l.eps.name).or_default().insert(l.eps.arity);
        }
        for l in &all_literals {
            let mut label = format!("{}_{}", if l.eps.negated { "n" } else { "p" }, l.eps.name);
            if arities[&*l.eps.name].len() > 1 {
                label = format!("{label}_{}", l.eps.arity);
            }
            t.eps.entry(l.eps.clone()).or_insert(label);
        }
        for r in &p.rules {
            for l in &r.head {
                t.intern_literal(l);
            }
            for a in &r.pos {
                match a {
                    BodyAtom::Lit(l) => t.intern_literal(l),
                    BodyAtom::Builtin(b) => {
                        t.intern(builtin_key(b));
                        t.intern_term_exprs(&b.lhs);
                        t.intern_term_exprs(&b.rhs);
                    }
                }
            }
            for l in &r.neg {
                t.intern_literal(l);
            }
            for v in r.vars() {
                t.vars.entry(v.to_string()).or_insert_with(|| format!("v_{v}"));
            }
        }
        for l in i.iter() {
            t.intern_literal(l);
        }
        t.check_injective(p, i)?;
        Ok(t)
    }

    fn intern(&mut self, key: String) -> String {
        let next = self.literals.len() + 1;
        let label = self.literals.entry(key.clone()).or_insert_with(|| format!("l{next}")).clone();
        if self.literal_order.len() < self.literals.len() {
            self.literal_order.push(key);
        }
        label
    }

    fn intern_literal(&mut self, l: &Literal) {
        let label = self.intern(l.to_string());
        self.by_label.entry(label).or_insert_with(|| l.clone());
    }

    fn intern_term_exprs(&mut self, t: &Term) {
        if let Term::Arith(_, a, b) = t {
            self.intern_term_exprs(a);
            self.intern_term_exprs(b);
            let next = self.exprs.len() + 1;
            self.exprs.entry(t.to_string()).or_insert_with(|| format!("e{next}"));
        }
    }

    fn check_injective(&self, p: &Program, i: &Interpretation) -> Result<()> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let generated = (1..=self.rules)
            .map(|k| format!("r{k}"))
            .chain(self.literals.values().cloned())
            .chain(self.eps.values().cloned())
            .chain(self.vars.values().cloned())
            .chain(self.exprs.values().cloned())
            .chain(CmpOp::ALL.iter().map(|op| cmp_label(*op).to_owned()));
        let constants = p
            .constants()
            .into_iter()
            .chain(i.constants())
            .filter(|c| c.as_num().is_none())
            .map(|c| c.to_string())
            .collect::<BTreeSet<_>>();
        for label in generated.chain(constants) {
            if !seen.insert(label.clone()) {
                return Err(Error::LabelCollision(label));
            }
        }
        Ok(())
    }

    pub fn rule_label(&self, index: usize) -> String {
        format!("r{}", index + 1)
    }

    /// Inverse of [`LabelTable::rule_label`].
    pub fn rule_index(&self, label: &str) -> Option<usize> {
        let k: usize = label.strip_prefix('r')?.parse().ok()?;
        (1..=self.rules).contains(&k).then(|| k - 1)
    }

    pub fn literal_label(&self, l: &Literal) -> Option<&str> {
        self.literals.get(&l.to_string()).map(String::as_str)
    }

    pub fn builtin_label(&self, b: &Builtin) -> Option<&str> {
        self.literals.get(&builtin_key(b)).map(String::as_str)
    }

    /// The literal a label stands for; comparisons have none.
    pub fn literal(&self, label: &str) -> Option<&Literal> {
        self.by_label.get(label)
    }

    pub fn eps_label(&self, e: &Eps) -> Option<&str> {
        self.eps.get(e).map(String::as_str)
    }

    pub fn var_label(&self, name: &str) -> Option<&str> {
        self.vars.get(name).map(String::as_str)
    }

    /// Variable name for a variable label.
    pub fn var_name(&self, label: &str) -> Option<&str> {
        self.vars.iter().find(|(_, l)| *l == label).map(|(n, _)| n.as_str())
    }

    fn expr_label(&self, t: &Term) -> &str {
        &self.exprs[&t.to_string()]
    }

    /// Printed forms of all labelled literals, by label number.
    pub fn literal_keys(&self) -> &[String] {
        &self.literal_order
    }
}

fn literal_facts(l: &Literal, labels: &LabelTable, out: &mut BTreeSet<Fact>) {
    let a = sym(labels.literal_label(l).expect("literal is labelled"));
    out.insert(Fact::new("pred", vec![a.clone(), sym(labels.eps_label(&l.eps).expect("eps is labelled"))]));
    for (k, t) in l.args.iter().enumerate() {
        match t {
            Term::Var(v) => out.insert(Fact::new(
                "struct",
                vec![a.clone(), num(k + 1), sym("var"), sym(labels.var_label(v).expect("variable is labelled"))],
            )),
            Term::Const(c) => out.insert(Fact::new("struct", vec![a.clone(), num(k + 1), sym("const"), c.clone()])),
            Term::Arith(..) => unreachable!("literals carry no arithmetic"),
        };
    }
}

fn term_ref(t: &Term, labels: &LabelTable) -> (Constant, Constant) {
    match t {
        Term::Var(v) => (sym("var"), sym(labels.var_label(v).expect("variable is labelled"))),
        Term::Const(c) => (sym("const"), c.clone()),
        Term::Arith(..) => (sym("expr"), sym(labels.expr_label(t))),
    }
}

fn expr_facts(t: &Term, labels: &LabelTable, out: &mut BTreeSet<Fact>) {
    if let Term::Arith(op, a, b) = t {
        let e = sym(labels.expr_label(t));
        let name = match op {
            ArithOp::Add => "plus",
            ArithOp::Mul => "times",
        };
        out.insert(Fact::new("arith", vec![e.clone(), sym(name)]));
        for (k, sub) in [a, b].into_iter().enumerate() {
            let (kind, x) = term_ref(sub, labels);
            out.insert(Fact::new("operand", vec![e.clone(), num(k + 1), kind, x]));
            expr_facts(sub, labels, out);
        }
    }
}

fn builtin_facts(b: &Builtin, labels: &LabelTable, out: &mut BTreeSet<Fact>) {
    let a = sym(labels.builtin_label(b).expect("comparison is labelled"));
    out.insert(Fact::new("pred", vec![a.clone(), sym(cmp_label(b.op))]));
    for (k, t) in [&b.lhs, &b.rhs].into_iter().enumerate() {
        let (kind, x) = term_ref(t, labels);
        out.insert(Fact::new("struct", vec![a.clone(), num(k + 1), kind, x]));
        expr_facts(t, labels, out);
    }
}

/// Facts describing rule `index` of the program.
pub fn reify_rule(index: usize, r: &Rule, labels: &LabelTable) -> BTreeSet<Fact> {
    let mut out = BTreeSet::new();
    let rl = sym(&labels.rule_label(index));
    out.insert(Fact::new("rule", vec![rl.clone()]));
    for l in &r.head {
        out.insert(Fact::new("head", vec![rl.clone(), sym(labels.literal_label(l).unwrap())]));
        literal_facts(l, labels, &mut out);
    }
    for a in &r.pos {
        match a {
            BodyAtom::Lit(l) => {
                out.insert(Fact::new("posbody", vec![rl.clone(), sym(labels.literal_label(l).unwrap())]));
                literal_facts(l, labels, &mut out);
            }
            BodyAtom::Builtin(b) => {
                out.insert(Fact::new("posbody", vec![rl.clone(), sym(labels.builtin_label(b).unwrap())]));
                builtin_facts(b, labels, &mut out);
            }
        }
    }
    for l in &r.neg {
        out.insert(Fact::new("negbody", vec![rl.clone(), sym(labels.literal_label(l).unwrap())]));
        literal_facts(l, labels, &mut out);
    }
    for v in r.vars() {
        out.insert(Fact::new("var", vec![rl.clone(), sym(labels.var_label(&v).unwrap())]));
    }
    out
}

/// Rule facts plus `dom/1` for the constants of the program and `arity/2`
/// for its predicate symbols and comparison operators.
pub fn reify_program(p: &Program, labels: &LabelTable) -> BTreeSet<Fact> {
    let mut out = BTreeSet::new();
    for (k, r) in p.rules.iter().enumerate() {
        out.extend(reify_rule(k, r, labels));
    }
    for c in p.constants() {
        out.insert(Fact::new("dom", vec![c]));
    }
    for r in &p.rules {
        for l in r.literals() {
            out.insert(Fact::new("arity", vec![sym(labels.eps_label(&l.eps).unwrap()), num(l.eps.arity)]));
        }
        for b in r.builtins() {
            out.insert(Fact::new("arity", vec![sym(cmp_label(b.op)), num(2)]));
        }
    }
    out
}

pub fn reify_interpretation(i: &Interpretation, labels: &LabelTable) -> BTreeSet<Fact> {
    let mut out = BTreeSet::new();
    for l in i.iter() {
        let a = sym(labels.literal_label(l).expect("literal is labelled"));
        out.insert(Fact::new("int", vec![a.clone()]));
        out.insert(Fact::new("pred", vec![a.clone(), sym(labels.eps_label(&l.eps).unwrap())]));
        for (k, t) in l.args.iter().enumerate() {
            if let Term::Const(c) = t {
                out.insert(Fact::new("struct", vec![a.clone(), num(k + 1), sym("const"), c.clone()]));
            }
        }
    }
    out
}

/// `max(|I|, arities in P)`; comparisons count as binary.
pub fn nat_bound(p: &Program, i: &Interpretation) -> usize {
    let arity = p
        .rules
        .iter()
        .flat_map(|r| {
            r.literals()
                .map(|l| l.eps.arity)
                .chain(r.builtins().map(|_| 2))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(0);
    arity.max(i.len())
}

fn collect_arith<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
    if let Term::Arith(_, a, b) = t {
        out.push(t);
        collect_arith(a, out);
        collect_arith(b, out);
    }
}

/// Largest value any arithmetic subterm of `p` can take over the numeric
/// constants of `p`; both operations are monotone, so substituting the
/// largest number for every variable gives the bound.
pub fn arith_bound(p: &Program) -> u64 {
    let top = p.constants().iter().filter_map(Constant::as_num).max().unwrap_or(0);
    let mut terms = Vec::new();
    for r in &p.rules {
        for b in r.builtins() {
            collect_arith(&b.lhs, &mut terms);
            collect_arith(&b.rhs, &mut terms);
        }
    }
    let mut bound = top;
    for t in terms {
        let mut vars = BTreeSet::new();
        t.collect_vars(&mut vars);
        let subst = vars.into_iter().map(|v| (v, Constant::Num(top))).collect();
        if let Some(Constant::Num(v)) = t.apply(&subst).ok().and_then(|g| g.eval()) {
            bound = bound.max(v);
        }
    }
    bound
}

/// Largest value the comparison tables may range over.
pub const ARITH_TABLE_LIMIT: u64 = 1000;

fn comparison_tables(p: &Program) -> Result<BTreeSet<Fact>> {
    let mut out = BTreeSet::new();
    let ops: BTreeSet<CmpOp> = p.rules.iter().flat_map(|r| r.builtins().map(|b| b.op)).collect();
    if ops.is_empty() {
        return Ok(out);
    }
    let m = arith_bound(p);
    if m > ARITH_TABLE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "arithmetic tables would range up to {m} (limit {ARITH_TABLE_LIMIT})"
        )));
    }
    let mut arith = Vec::new();
    for r in &p.rules {
        for b in r.builtins() {
            collect_arith(&b.lhs, &mut arith);
            collect_arith(&b.rhs, &mut arith);
        }
    }
    let uses = |op: ArithOp| arith.iter().any(|t| matches!(t, Term::Arith(o, ..) if *o == op));
    let (plus, times) = (uses(ArithOp::Add), uses(ArithOp::Mul));
    for v in 0..=m {
        out.insert(Fact::new("num", vec![Constant::Num(v)]));
    }
    for a in 0..=m {
        for b in 0..=m {
            if plus && a + b <= m {
                out.insert(Fact::new("plus", vec![Constant::Num(a), Constant::Num(b), Constant::Num(a + b)]));
            }
            if times && a * b <= m {
                out.insert(Fact::new("times", vec![Constant::Num(a), Constant::Num(b), Constant::Num(a * b)]));
            }
        }
    }
    let values: BTreeSet<Constant> = p.constants().into_iter().chain((0..=m).map(Constant::Num)).collect();
    for op in ops {
        for a in &values {
            for b in &values {
                if op.holds(a.cmp(b)) {
                    out.insert(Fact::new("cmp", vec![sym(cmp_label(op)), a.clone(), b.clone()]));
                }
            }
        }
    }
    Ok(out)
}

/// The reified input for a program and an interpretation.
#[derive(Clone, Debug)]
pub struct Reified {
    pub labels: LabelTable,
    pub facts: BTreeSet<Fact>,
    /// Largest `n` with a `natNumber(n)` fact.
    pub nat_bound: usize,
}

impl Reified {
    pub fn to_text(&self) -> String {
        facts_text(&self.facts)
    }

    pub fn count(&self, pred: &str) -> usize {
        self.facts.iter().filter(|f| f.pred == pred).count()
    }
}

pub fn reify_input(p: &Program, i: &Interpretation) -> Result<Reified> {
    let labels = LabelTable::new(p, i)?;
    let mut facts = reify_program(p, &labels);
    facts.extend(reify_interpretation(i, &labels));
    let n = nat_bound(p, i);
    for k in 0..=n {
        facts.insert(Fact::new("natNumber", vec![num(k)]));
    }
    facts.extend(comparison_tables(p)?);
    Ok(Reified {
        labels,
        facts,
        nat_bound: n,
    })
}

/// One fact per line, sorted by predicate and then arguments.
pub fn facts_text(facts: &BTreeSet<Fact>) -> String {
    facts.iter().map(|f| format!("{f}\n")).collect()
}

/// Reads a fact file back.
pub fn parse_facts(text: &str) -> Result<BTreeSet<Fact>> {
    let p = parse_program(text)?;
    p.rules
        .iter()
        .map(|r| {
            if !r.is_fact() {
                return Err(Error::NonGround(r.to_string()));
            }
            let l = &r.head[0];
            let args = l.constants().ok_or_else(|| Error::NonGround(l.to_string()))?;
            Ok(Fact::new(&l.eps.name, args))
        })
        .collect()
}

/// Program size: one per rule plus one per atom and one per argument.
pub fn program_size(p: &Program) -> usize {
    p.rules
        .iter()
        .map(|r| {
            1 + r.literals().map(|l| 1 + l.args.len()).sum::<usize>() + r.builtins().count() * 3
        })
        .sum()
}

pub fn interpretation_size(i: &Interpretation) -> usize {
    i.iter().map(|l| 1 + l.args.len()).sum()
}

/// Linear bound on the number of facts for comparison-free programs.
pub fn size_bound(p: &Program, i: &Interpretation) -> usize {
    3 * (program_size(p) + interpretation_size(i) + nat_bound(p, i) + 1)
}
