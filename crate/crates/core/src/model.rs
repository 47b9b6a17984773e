//! The object language: constants, terms, literals, builtin comparisons,
//! disjunctive rules, programs, interpretations and substitutions.
//!
//! Constants are totally ordered: natural numbers come first and compare by
//! value, symbolic constants follow in byte-lexicographic order. The derived
//! `Ord` on [`Constant`] implements exactly this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Symbol = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Num(u64),
    Sym(Symbol),
}

impl Constant {
    pub fn sym(name: &str) -> Self {
        Constant::Sym(Arc::from(name))
    }

    pub fn as_num(&self) -> Option<u64> {
        match self {
            Constant::Num(n) => Some(*n),
            Constant::Sym(_) => None,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Num(n) => write!(f, "{n}"),
            Constant::Sym(s) => f.write_str(s),
        }
    }
}

impl From<u64> for Constant {
    fn from(n: u64) -> Self {
        Constant::Num(n)
    }
}

impl From<&str> for Constant {
    fn from(s: &str) -> Self {
        Constant::sym(s)
    }
}

/// The linear order on constants.
pub fn compare(a: &Constant, b: &Constant) -> Ordering {
    a.cmp(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithOp {
    Add,
    Mul,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Mul => "*",
        }
    }

    fn apply(self, a: u64, b: u64) -> Option<u64> {
        match self {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Mul => a.checked_mul(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Constant),
    Var(Symbol),
    /// Only legal inside builtin comparisons.
    Arith(ArithOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Arc::from(name))
    }

    pub fn sym(name: &str) -> Self {
        Term::Const(Constant::sym(name))
    }

    pub fn num(n: u64) -> Self {
        Term::Const(Constant::Num(n))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::Var(_) => false,
            Term::Arith(_, a, b) => a.is_ground() && b.is_ground(),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Arith(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<Constant>) {
        match self {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::Arith(_, a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
        }
    }

    pub fn apply(&self, subst: &Substitution) -> Result<Term> {
        Ok(match self {
            Term::Const(_) => self.clone(),
            Term::Var(v) => Term::Const(
                subst
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::UnboundVariable(v.to_string()))?,
            ),
            Term::Arith(op, a, b) => {
                Term::Arith(*op, Box::new(a.apply(subst)?), Box::new(b.apply(subst)?))
            }
        })
    }

    /// Evaluates a ground term. Arithmetic is over naturals; a non-numeric
    /// operand or an overflow yields `None`.
    pub fn eval(&self) -> Option<Constant> {
        match self {
            Term::Const(c) => Some(c.clone()),
            Term::Var(_) => None,
            Term::Arith(op, a, b) => {
                let a = a.eval()?.as_num()?;
                let b = b.eval()?.as_num()?;
                op.apply(a, b).map(Constant::Num)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => c.fmt(f),
            Term::Var(v) => f.write_str(v),
            Term::Arith(op, a, b) => {
                for (i, t) in [a, b].into_iter().enumerate() {
                    if i == 1 {
                        write!(f, " {} ", op.symbol())?;
                    }
                    // left-associative; `*` binds tighter than `+`
                    let needs = match **t {
                        Term::Arith(inner, ..) => inner < *op || (i == 1 && inner == *op),
                        _ => false,
                    };
                    if needs {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Extended predicate symbol: a predicate name, optionally strongly negated,
/// together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eps {
    pub name: Symbol,
    pub negated: bool,
    pub arity: usize,
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub eps: Eps,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(name: &str, negated: bool, args: Vec<Term>) -> Result<Self> {
        if let Some(t) = args.iter().find(|t| matches!(t, Term::Arith(..))) {
            return Err(Error::NonGround(format!(
                "arithmetic term {t} is not allowed as a literal argument"
            )));
        }
        Ok(Literal {
            eps: Eps {
                name: Arc::from(name),
                negated,
                arity: args.len(),
            },
            args,
        })
    }

    /// Builds a ground literal from constants.
    pub fn ground<I, C>(name: &str, negated: bool, args: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<Constant>,
    {
        let args: Vec<Term> = args.into_iter().map(|c| Term::Const(c.into())).collect();
        Literal {
            eps: Eps {
                name: Arc::from(name),
                negated,
                arity: args.len(),
            },
            args,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn complement(&self) -> Literal {
        let mut l = self.clone();
        l.eps.negated = !l.eps.negated;
        l
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }

    pub fn apply(&self, subst: &Substitution) -> Result<Literal> {
        Ok(Literal {
            eps: self.eps.clone(),
            args: self
                .args
                .iter()
                .map(|t| t.apply(subst))
                .collect::<Result<_>>()?,
        })
    }

    /// Ground arguments as constants, `None` if a variable remains.
    pub fn constants(&self) -> Option<Vec<Constant>> {
        self.args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.eps.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Neq,
    Leq,
    Lt,
    Geq,
    Gt,
}

impl CmpOp {
    pub const ALL: [CmpOp; 6] = [
        CmpOp::Eq,
        CmpOp::Neq,
        CmpOp::Leq,
        CmpOp::Lt,
        CmpOp::Geq,
        CmpOp::Gt,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Neq => "!=",
            CmpOp::Leq => "<=",
            CmpOp::Lt => "<",
            CmpOp::Geq => ">=",
            CmpOp::Gt => ">",
        }
    }

    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            CmpOp::Eq => ord == Ordering::Equal,
            CmpOp::Neq => ord != Ordering::Equal,
            CmpOp::Leq => ord != Ordering::Greater,
            CmpOp::Lt => ord == Ordering::Less,
            CmpOp::Geq => ord != Ordering::Less,
            CmpOp::Gt => ord == Ordering::Greater,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Builtin {
    pub lhs: Term,
    pub op: CmpOp,
    pub rhs: Term,
}

impl Builtin {
    pub fn new(lhs: Term, op: CmpOp, rhs: Term) -> Self {
        Builtin { lhs, op, rhs }
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }

    pub fn apply(&self, subst: &Substitution) -> Result<Builtin> {
        Ok(Builtin {
            lhs: self.lhs.apply(subst)?,
            op: self.op,
            rhs: self.rhs.apply(subst)?,
        })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BodyAtom {
    Lit(Literal),
    Builtin(Builtin),
}

impl BodyAtom {
    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            BodyAtom::Lit(l) => Some(l),
            BodyAtom::Builtin(_) => None,
        }
    }

    fn apply(&self, subst: &Substitution) -> Result<BodyAtom> {
        Ok(match self {
            BodyAtom::Lit(l) => BodyAtom::Lit(l.apply(subst)?),
            BodyAtom::Builtin(b) => BodyAtom::Builtin(b.apply(subst)?),
        })
    }
}

impl fmt::Display for BodyAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyAtom::Lit(l) => l.fmt(f),
            BodyAtom::Builtin(b) => b.fmt(f),
        }
    }
}

/// Byte range of a rule in its source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// A disjunctive rule `h1 | ... | hl :- b1, ..., bm, not c1, ..., not cn.`
///
/// Equality ignores the source span.
#[derive(Clone, Debug)]
pub struct Rule {
    pub head: Vec<Literal>,
    pub pos: Vec<BodyAtom>,
    pub neg: Vec<Literal>,
    pub span: Option<Span>,
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.pos == other.pos && self.neg == other.neg
    }
}

impl Eq for Rule {}

impl Rule {
    pub fn new(head: Vec<Literal>, pos: Vec<BodyAtom>, neg: Vec<Literal>) -> Result<Self> {
        if head.is_empty() && pos.is_empty() && neg.is_empty() {
            return Err(Error::EmptyRule);
        }
        Ok(Rule {
            head,
            pos,
            neg,
            span: None,
        })
    }

    pub fn with_span(mut self, span: Span) -> Self {
        self.span = Some(span);
        self
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn pos_literals(&self) -> impl Iterator<Item = &Literal> {
        self.pos.iter().filter_map(BodyAtom::as_literal)
    }

    pub fn builtins(&self) -> impl Iterator<Item = &Builtin> {
        self.pos.iter().filter_map(|a| match a {
            BodyAtom::Builtin(b) => Some(b),
            BodyAtom::Lit(_) => None,
        })
    }

    /// Every literal of the rule, head first, then positive and negative body.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head
            .iter()
            .chain(self.pos_literals())
            .chain(self.neg.iter())
    }

    /// Variables of the rule in name order.
    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for l in self.literals() {
            l.collect_vars(&mut out);
        }
        for b in self.builtins() {
            b.lhs.collect_vars(&mut out);
            b.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<Constant>) {
        for l in self.literals() {
            l.args.iter().for_each(|t| t.collect_constants(out));
        }
        for b in self.builtins() {
            b.lhs.collect_constants(out);
            b.rhs.collect_constants(out);
        }
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(Literal::is_ground) && self.builtins().all(Builtin::is_ground)
    }

    /// Applies `subst`, which must bind every variable of the rule.
    pub fn apply(&self, subst: &Substitution) -> Result<Rule> {
        Ok(Rule {
            head: self
                .head
                .iter()
                .map(|l| l.apply(subst))
                .collect::<Result<_>>()?,
            pos: self
                .pos
                .iter()
                .map(|a| a.apply(subst))
                .collect::<Result<_>>()?,
            neg: self
                .neg
                .iter()
                .map(|l| l.apply(subst))
                .collect::<Result<_>>()?,
            span: self.span,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.pos.is_empty() || !self.neg.is_empty() {
            if self.head.is_empty() {
                f.write_str(":- ")?;
            } else {
                f.write_str(" :- ")?;
            }
            let body = self
                .pos
                .iter()
                .map(ToString::to_string)
                .chain(self.neg.iter().map(|l| format!("not {l}")));
            for (i, b) in body.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&b)?;
            }
        }
        f.write_str(".")
    }
}

/// An ordered list of rules; a rule's position is its identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn constants(&self) -> BTreeSet<Constant> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.collect_constants(&mut out);
        }
        out
    }

    pub fn has_builtins(&self) -> bool {
        self.rules.iter().any(|r| r.builtins().next().is_some())
    }

    /// Every EPS occurring in the program, in order.
    pub fn eps_set(&self) -> BTreeSet<Eps> {
        self.rules
            .iter()
            .flat_map(|r| r.literals().map(|l| l.eps.clone()))
            .collect()
    }

    /// Predicate names (with strong negation sign) used with more than one arity.
    pub fn arity_clashes(&self) -> Vec<(Symbol, bool)> {
        let mut seen: BTreeMap<(Symbol, bool), BTreeSet<usize>> = BTreeMap::new();
        for e in self.eps_set() {
            seen.entry((e.name.clone(), e.negated))
                .or_default()
                .insert(e.arity);
        }
        seen.into_iter()
            .filter(|(_, a)| a.len() > 1)
            .map(|(k, _)| k)
            .collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A finite, consistent set of ground literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    literals: BTreeSet<Literal>,
}

impl Interpretation {
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self> {
        let literals: BTreeSet<Literal> = literals.into_iter().collect();
        for l in &literals {
            if !l.is_ground() {
                return Err(Error::NonGround(l.to_string()));
            }
            if !l.eps.negated && literals.contains(&l.complement()) {
                return Err(Error::Inconsistent(l.to_string()));
            }
        }
        Ok(Interpretation { literals })
    }

    pub fn empty() -> Self {
        Interpretation::default()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.literals.contains(l)
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    pub fn constants(&self) -> BTreeSet<Constant> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            l.args.iter().for_each(|t| t.collect_constants(&mut out));
        }
        out
    }

    pub fn with(&self, l: Literal) -> Result<Self> {
        Interpretation::new(self.literals.iter().cloned().chain(std::iter::once(l)))
    }

    pub fn without(&self, l: &Literal) -> Self {
        let mut literals = self.literals.clone();
        literals.remove(l);
        Interpretation { literals }
    }
}

impl FromIterator<Literal> for Result<Interpretation> {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Interpretation::new(iter)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{l}")?;
        }
        f.write_str(if self.literals.is_empty() { "}" } else { " }" })
    }
}

/// A map from variable names to constants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Symbol, Constant>);

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn get(&self, var: &str) -> Option<&Constant> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: Symbol, value: Constant) {
        self.0.insert(var, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Constant)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'a> FromIterator<(&'a str, Constant)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (&'a str, Constant)>>(iter: T) -> Self {
        Substitution(iter.into_iter().map(|(k, v)| (Arc::from(k), v)).collect())
    }
}

impl FromIterator<(Symbol, Constant)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (Symbol, Constant)>>(iter: T) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(name: &str, args: &[&str]) -> Literal {
        let args = args
            .iter()
            .map(|a| {
                if a.starts_with(char::is_uppercase) {
                    Term::var(a)
                } else if let Ok(n) = a.parse() {
                    Term::num(n)
                } else {
                    Term::sym(a)
                }
            })
            .collect();
        Literal::new(name, false, args).unwrap()
    }

    #[test]
    fn numbers_precede_symbols() {
        assert_eq!(compare(&1.into(), &3.into()), Ordering::Less);
        assert_eq!(compare(&"m1".into(), &"m1".into()), Ordering::Equal);
        assert_eq!(compare(&2.into(), &"m1".into()), Ordering::Less);
        assert_eq!(compare(&"p1".into(), &"m2".into()), Ordering::Greater);
        assert_eq!(compare(&10.into(), &9.into()), Ordering::Greater);
    }

    #[test]
    fn apply_grounds_rule() {
        let r = Rule::new(
            vec![lit("some_bid", &["M", "P"])],
            vec![BodyAtom::Lit(lit("bid", &["M", "P", "X"]))],
            vec![],
        )
        .unwrap();
        let theta: Substitution = [("M", "m2".into()), ("P", "p1".into()), ("X", 1.into())]
            .into_iter()
            .collect();
        let g = r.apply(&theta).unwrap();
        assert!(g.is_ground());
        assert_eq!(g.to_string(), "some_bid(m2,p1) :- bid(m2,p1,1).");
    }

    #[test]
    fn apply_identity_on_ground_fact() {
        let r = Rule::new(vec![lit("pc", &["m1"])], vec![], vec![]).unwrap();
        assert!(r.is_fact());
        assert_eq!(r.apply(&Substitution::new()).unwrap(), r);
    }

    #[test]
    fn apply_constraint() {
        let r = Rule::new(
            vec![],
            vec![
                BodyAtom::Lit(lit("assigned", &["P", "M"])),
                BodyAtom::Lit(lit("bid", &["M", "P", "0"])),
            ],
            vec![],
        )
        .unwrap();
        let theta: Substitution = [("P", "p1".into()), ("M", "m1".into())]
            .into_iter()
            .collect();
        assert_eq!(
            r.apply(&theta).unwrap().to_string(),
            ":- assigned(p1,m1), bid(m1,p1,0)."
        );
    }

    #[test]
    fn apply_reports_unbound_variable() {
        let r = Rule::new(vec![lit("p", &["X", "Y"])], vec![], vec![]).unwrap();
        let theta: Substitution = [("X", "a".into())].into_iter().collect();
        assert!(matches!(r.apply(&theta), Err(Error::UnboundVariable(v)) if v == "Y"));
    }

    #[test]
    fn empty_rule_rejected() {
        assert!(matches!(Rule::new(vec![], vec![], vec![]), Err(Error::EmptyRule)));
    }

    #[test]
    fn interpretation_rejects_complementary_pair() {
        let a = Literal::ground::<[u64; 0], u64>("a", false, []);
        let err = Interpretation::new([a.clone(), a.complement()]).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
        assert!(Interpretation::new([a.clone()]).unwrap().with(a.complement()).is_err());
    }

    #[test]
    fn interpretation_rejects_non_ground() {
        assert!(matches!(
            Interpretation::new([lit("p", &["X"])]),
            Err(Error::NonGround(_))
        ));
    }

    #[test]
    fn arithmetic_evaluation() {
        let t = Term::Arith(ArithOp::Add, Box::new(Term::num(2)), Box::new(Term::num(3)));
        assert_eq!(t.eval(), Some(Constant::Num(5)));
        let t = Term::Arith(ArithOp::Add, Box::new(Term::sym("m1")), Box::new(Term::num(1)));
        assert_eq!(t.eval(), None);
        let nested = Term::Arith(ArithOp::Mul, Box::new(t), Box::new(Term::var("X")));
        assert_eq!(nested.to_string(), "(m1 + 1) * X");
    }

    #[test]
    fn literal_rejects_arith_arguments() {
        let t = Term::Arith(ArithOp::Add, Box::new(Term::num(2)), Box::new(Term::num(3)));
        assert!(Literal::new("p", false, vec![t]).is_err());
    }
}
