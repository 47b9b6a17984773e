//! External support and unfounded sets.
//!
//! A ground rule `r` supports a literal set `J` externally with respect to
//! `I` when
//!
//! * (i) `I |= B(r)`, i.e. `B+(r) ⊆ I` and `B-(r) ∩ I = ∅`,
//! * (ii) `H(r) ∩ J ≠ ∅`,
//! * (iii) `(H(r) \ J) ∩ I = ∅`,
//! * (iv) `B+(r) ∩ J = ∅`.
//!
//! `J` is unfounded when no ground rule supports it externally.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::grounder::{GroundProgram, GroundRule};
use crate::model::{Interpretation, Literal, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    #[serde(rename = "i")]
    BodyTrue,
    #[serde(rename = "ii")]
    HeadMeetsSet,
    #[serde(rename = "iii")]
    OtherHeadsFalse,
    #[serde(rename = "iv")]
    BodyOutsideSet,
}

impl Condition {
    pub fn roman(self) -> &'static str {
        match self {
            Condition::BodyTrue => "i",
            Condition::HeadMeetsSet => "ii",
            Condition::OtherHeadsFalse => "iii",
            Condition::BodyOutsideSet => "iv",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

/// A ground rule that supports a set externally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportWitness {
    pub rule_index: usize,
    pub subst: Substitution,
    pub instance: GroundRule,
}

impl From<&GroundRule> for SupportWitness {
    fn from(r: &GroundRule) -> Self {
        SupportWitness {
            rule_index: r.rule_index,
            subst: r.subst.clone(),
            instance: r.clone(),
        }
    }
}

/// Conditions (i)–(iv) that `r` violates for `j` under `i`, in order.
pub fn violated_conditions(
    r: &GroundRule,
    j: &BTreeSet<Literal>,
    i: &Interpretation,
) -> Vec<Condition> {
    let mut out = Vec::new();
    if !r.pos.iter().all(|l| i.contains(l)) || r.neg.iter().any(|l| i.contains(l)) {
        out.push(Condition::BodyTrue);
    }
    if !r.head.iter().any(|l| j.contains(l)) {
        out.push(Condition::HeadMeetsSet);
    }
    if r.head.iter().any(|l| !j.contains(l) && i.contains(l)) {
        out.push(Condition::OtherHeadsFalse);
    }
    if r.pos.iter().any(|l| j.contains(l)) {
        out.push(Condition::BodyOutsideSet);
    }
    out
}

pub fn supports(r: &GroundRule, j: &BTreeSet<Literal>, i: &Interpretation) -> bool {
    violated_conditions(r, j, i).is_empty()
}

/// First external support of `j` in ground-program order, if any.
pub fn externally_supported(
    j: &BTreeSet<Literal>,
    g: &GroundProgram,
    i: &Interpretation,
) -> Option<SupportWitness> {
    g.rules.iter().find(|r| supports(r, j, i)).map(Into::into)
}

pub fn all_supports(j: &BTreeSet<Literal>, g: &GroundProgram, i: &Interpretation) -> Vec<SupportWitness> {
    g.rules
        .iter()
        .filter(|r| supports(r, j, i))
        .map(Into::into)
        .collect()
}

pub fn unfounded(j: &BTreeSet<Literal>, g: &GroundProgram, i: &Interpretation) -> bool {
    externally_supported(j, g, i).is_none()
}

/// Ground rules with `lit` in the head together with the conditions that
/// keep each of them from supporting `j`.
pub fn blocked_rules<'g>(
    lit: &Literal,
    j: &BTreeSet<Literal>,
    g: &'g GroundProgram,
    i: &Interpretation,
) -> Vec<(&'g GroundRule, Vec<Condition>)> {
    g.rules
        .iter()
        .filter(|r| r.head.contains(lit))
        .map(|r| (r, violated_conditions(r, j, i)))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounder::ground;
    use crate::parser::{parse_interpretation, parse_literal, parse_program};

    fn set(xs: &[&str]) -> BTreeSet<Literal> {
        xs.iter().map(|x| parse_literal(x).unwrap()).collect()
    }

    #[test]
    fn fact_supports_itself() {
        let g = ground(&parse_program("a. b :- a.").unwrap());
        let i = parse_interpretation("{a, b}").unwrap();
        let w = externally_supported(&set(&["a"]), &g, &i).unwrap();
        assert_eq!(w.rule_index, 0);
        assert!(!unfounded(&set(&["a", "b"]), &g, &i));
    }

    #[test]
    fn self_support_is_not_external() {
        let g = ground(&parse_program("a :- a.").unwrap());
        let i = parse_interpretation("{a}").unwrap();
        let j = set(&["a"]);
        assert!(unfounded(&j, &g, &i));
        let blocked = blocked_rules(&parse_literal("a").unwrap(), &j, &g, &i);
        assert_eq!(blocked.len(), 1);
        assert_eq!(blocked[0].1, vec![Condition::BodyOutsideSet]);
    }

    #[test]
    fn literal_outside_heads_is_unfounded() {
        let g = ground(&parse_program("b :- c.").unwrap());
        let i = parse_interpretation("{a}").unwrap();
        assert!(unfounded(&set(&["a"]), &g, &i));
        assert!(blocked_rules(&parse_literal("a").unwrap(), &set(&["a"]), &g, &i).is_empty());
    }

    #[test]
    fn disjunction_with_other_true_head_blocks() {
        let g = ground(&parse_program("a | b.").unwrap());
        let i = parse_interpretation("{a, b}").unwrap();
        assert!(unfounded(&set(&["a"]), &g, &i));
        assert!(!unfounded(&set(&["a", "b"]), &g, &i));
        let v = violated_conditions(&g.rules[0], &set(&["a"]), &i);
        assert_eq!(v, vec![Condition::OtherHeadsFalse]);
    }

    #[test]
    fn all_supports_agree_with_first() {
        let g = ground(&parse_program("a :- b. a :- c. b. c.").unwrap());
        let i = parse_interpretation("{a, b, c}").unwrap();
        let all = all_supports(&set(&["a"]), &g, &i);
        assert_eq!(all.len(), 2);
        assert_eq!(Some(all[0].clone()), externally_supported(&set(&["a"]), &g, &i));
    }
}
