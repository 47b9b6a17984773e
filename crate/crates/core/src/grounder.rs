//! Herbrand instantiation.
//!
//! Every rule is instantiated with every substitution over the constants of
//! the program, variables occurring only in heads or comparisons included.
//! Instances whose comparisons evaluate to false are dropped; the remaining
//! comparisons are true and are removed from the instance.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{BodyAtom, Builtin, Constant, Literal, Program, Rule, Substitution, Symbol};

/// Constants of `program` in ascending order.
pub fn herbrand_universe(program: &Program) -> Vec<Constant> {
    program.constants().into_iter().collect()
}

/// Evaluates a ground comparison. Arithmetic with a non-numeric operand
/// makes the comparison false.
pub fn eval_builtin(b: &Builtin) -> bool {
    match (b.lhs.eval(), b.rhs.eval()) {
        (Some(l), Some(r)) => b.op.holds(l.cmp(&r)),
        _ => false,
    }
}

/// A ground, comparison-free rule together with the rule and substitution it
/// came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundRule {
    pub rule_index: usize,
    pub subst: Substitution,
    pub head: Vec<Literal>,
    pub pos: Vec<Literal>,
    pub neg: Vec<Literal>,
}

impl GroundRule {
    pub fn to_rule(&self) -> Rule {
        Rule {
            head: self.head.clone(),
            pos: self.pos.iter().cloned().map(BodyAtom::Lit).collect(),
            neg: self.neg.clone(),
            span: None,
        }
    }
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rule().fmt(f)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
}

impl GroundProgram {
    /// Ground literals occurring anywhere in the program.
    pub fn literals(&self) -> BTreeSet<Literal> {
        self.rules
            .iter()
            .flat_map(|r| r.head.iter().chain(&r.pos).chain(&r.neg))
            .cloned()
            .collect()
    }

    pub fn to_program(&self) -> Program {
        Program::new(self.rules.iter().map(GroundRule::to_rule).collect())
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Instantiates one rule over `universe`. Substitutions are produced in
/// lexicographic order of (variable name, constant).
pub fn ground_rule(rule_index: usize, rule: &Rule, universe: &[Constant]) -> Vec<GroundRule> {
    let vars: Vec<Symbol> = rule.vars().into_iter().collect();
    let mut out = Vec::new();
    if !vars.is_empty() && universe.is_empty() {
        return out;
    }
    let mut digits = vec![0usize; vars.len()];
    loop {
        let subst: Substitution = vars
            .iter()
            .zip(&digits)
            .map(|(v, &d)| (v.clone(), universe[d].clone()))
            .collect();
        if let Some(g) = instantiate(rule_index, rule, subst) {
            out.push(g);
        }
        // odometer, last variable fastest
        let mut k = vars.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < universe.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn instantiate(rule_index: usize, rule: &Rule, subst: Substitution) -> Option<GroundRule> {
    let inst = rule.apply(&subst).expect("substitution covers the rule's variables");
    let mut pos = Vec::with_capacity(inst.pos.len());
    for atom in inst.pos {
        match atom {
            BodyAtom::Lit(l) => pos.push(l),
            BodyAtom::Builtin(b) => {
                if !eval_builtin(&b) {
                    return None;
                }
            }
        }
    }
    Some(GroundRule {
        rule_index,
        subst,
        head: inst.head,
        pos,
        neg: inst.neg,
    })
}

/// `ground(P)`: instances sorted by rule index, then substitution.
pub fn ground(program: &Program) -> GroundProgram {
    let universe = herbrand_universe(program);
    GroundProgram {
        rules: program
            .rules
            .iter()
            .enumerate()
            .flat_map(|(i, r)| ground_rule(i, r, &universe))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CmpOp, Term};
    use crate::parser::parse_program;

    const L2: &str = "pc(m1). pc(m2). paper(p1). bid(m1,p1,2).
        some_bid(M,P) :- bid(M,P,X).
        bid(M,P,1) :- not some_bid(M,P), pc(M), paper(P).";

    #[test]
    fn universe_of_lucy_two() {
        let p = parse_program(L2).unwrap();
        let u: Vec<String> = herbrand_universe(&p).iter().map(ToString::to_string).collect();
        assert_eq!(u, ["1", "2", "m1", "m2", "p1"]);
        assert!(herbrand_universe(&Program::default()).is_empty());
    }

    #[test]
    fn builtin_evaluation() {
        let b = |l: Term, op, r: Term| eval_builtin(&Builtin::new(l, op, r));
        assert!(!b(Term::num(1), CmpOp::Neq, Term::num(1)));
        assert!(b(Term::num(3), CmpOp::Neq, Term::num(1)));
        let m1_plus_1 = Term::Arith(
            crate::model::ArithOp::Add,
            Box::new(Term::sym("m1")),
            Box::new(Term::num(1)),
        );
        assert!(!b(m1_plus_1.clone(), CmpOp::Eq, Term::num(2)));
        assert!(!b(m1_plus_1, CmpOp::Neq, Term::num(2)));
        assert!(b(Term::num(7), CmpOp::Lt, Term::sym("a")));
    }

    #[test]
    fn instance_count_is_universe_power() {
        let p = parse_program(L2).unwrap();
        let g = ground(&p);
        assert_eq!(g.rules.iter().filter(|r| r.rule_index == 4).count(), 125);
        assert_eq!(g.rules.iter().filter(|r| r.rule_index == 5).count(), 25);
        assert_eq!(g.rules.len(), 4 + 125 + 25);
    }

    #[test]
    fn builtin_filters_instances() {
        let p = parse_program(&L2.replace("bid(M,P,X).", "bid(M,P,X), X != 1.")).unwrap();
        let g = ground(&p);
        let r1: Vec<_> = g.rules.iter().filter(|r| r.rule_index == 4).collect();
        assert_eq!(r1.len(), 100);
        assert!(r1
            .iter()
            .all(|r| r.subst.get("X") != Some(&Constant::Num(1)) && r.pos.len() == 1));
    }

    #[test]
    fn variable_free_program() {
        let p = parse_program("a :- b, 1 < 2. c :- 2 < 1. b.").unwrap();
        let g = ground(&p);
        assert_eq!(g.to_string(), "a :- b.\nb.\n");
    }

    #[test]
    fn empty_universe_drops_variable_rules() {
        let p = parse_program("p(X) :- q(X). r.").unwrap();
        assert_eq!(ground(&p).rules.len(), 1);
    }

    #[test]
    fn provenance_reproduces_instances() {
        let p = parse_program(L2).unwrap();
        for g in ground(&p).rules {
            let again = instantiate(g.rule_index, &p.rules[g.rule_index], g.subst.clone());
            assert_eq!(again.as_ref(), Some(&g));
        }
    }

    #[test]
    fn grounding_is_idempotent() {
        let p = parse_program(&L2.replace("bid(M,P,X).", "bid(M,P,X), X != 1.")).unwrap();
        let once = ground(&p);
        let twice = ground(&once.to_program());
        assert_eq!(once.to_program(), twice.to_program());
    }
}
