//! Compares the meta-program's findings with the native explainer.
//!
//! Four solver queries are made: all projected `(rule, substitution)` pairs
//! of answer sets containing `unsatisfied`, all loops of answer sets
//! containing `isLoop` and `unfounded`, whether any answer set exists, and
//! whether an answer set without `unsatisfied` and `unfounded` exists (it
//! never should).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::explain::explain;
use crate::meta::solver::{run_meta_with, MetaAnswerSet, SolverConfig};
use crate::model::{Constant, Interpretation, Literal, Program, Substitution};
use crate::reify::LabelTable;

/// An unsatisfied `(rule index, substitution)` pair.
pub type UnsatPair = (usize, Substitution);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub native_unsatisfied: BTreeSet<UnsatPair>,
    pub meta_unsatisfied: BTreeSet<UnsatPair>,
    pub native_loops: BTreeSet<BTreeSet<Literal>>,
    pub meta_loops: BTreeSet<BTreeSet<Literal>>,
    pub native_is_answer_set: bool,
    /// Whether the meta-program has an answer set.
    pub meta_has_answer_set: bool,
    /// Whether some answer set lacks both `unsatisfied` and `unfounded`.
    pub meta_uncovered: bool,
}

impl CrossCheckReport {
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        let show = |(r, s): &UnsatPair| format!("rule {} {s}", r + 1);
        for u in self.native_unsatisfied.difference(&self.meta_unsatisfied) {
            out.push(format!("unsatisfied instance missing from the meta answer sets: {}", show(u)));
        }
        for u in self.meta_unsatisfied.difference(&self.native_unsatisfied) {
            out.push(format!("meta answer sets report an extra unsatisfied instance: {}", show(u)));
        }
        let loop_text = |l: &BTreeSet<Literal>| {
            l.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        for l in self.native_loops.difference(&self.meta_loops) {
            out.push(format!("unfounded loop missing from the meta answer sets: {{{}}}", loop_text(l)));
        }
        for l in self.meta_loops.difference(&self.native_loops) {
            out.push(format!("meta answer sets report an extra unfounded loop: {{{}}}", loop_text(l)));
        }
        if self.native_is_answer_set == self.meta_has_answer_set {
            out.push(format!(
                "verdicts differ: native says {}, the meta-program {} answer sets",
                if self.native_is_answer_set { "answer set" } else { "not an answer set" },
                if self.meta_has_answer_set { "has" } else { "has no" }
            ));
        }
        if self.meta_uncovered {
            out.push("an answer set contains neither unsatisfied nor unfounded".to_owned());
        }
        out
    }

    pub fn agrees(&self) -> bool {
        self.mismatches().is_empty()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "unsatisfied instances: native {}, meta {}",
            self.native_unsatisfied.len(),
            self.meta_unsatisfied.len()
        )?;
        writeln!(
            f,
            "unfounded loops: native {}, meta {}",
            self.native_loops.len(),
            self.meta_loops.len()
        )?;
        let m = self.mismatches();
        if m.is_empty() {
            writeln!(f, "agree")
        } else {
            for line in m {
                writeln!(f, "mismatch: {line}")?;
            }
            Ok(())
        }
    }
}

fn constant(text: &str) -> Constant {
    match text.parse::<u64>() {
        Ok(n) => Constant::Num(n),
        Err(_) => Constant::sym(text),
    }
}

fn unsat_pair(s: &MetaAnswerSet, labels: &LabelTable) -> Result<UnsatPair> {
    let bad = |what: &str| Error::SolverFailure(format!("unexpected meta answer set ({what})"));
    let rules: Vec<_> = s.with_name("guessRule").collect();
    let [rule] = rules.as_slice() else {
        return Err(bad("guessRule"));
    };
    let index = labels.rule_index(&rule.args[0]).ok_or_else(|| bad("rule label"))?;
    let mut subst = Substitution::new();
    for a in s.with_name("subst") {
        let var = labels.var_name(&a.args[0]).ok_or_else(|| bad("variable label"))?;
        subst.insert(var.into(), constant(&a.args[1]));
    }
    Ok((index, subst))
}

fn loop_members(s: &MetaAnswerSet, labels: &LabelTable) -> Result<BTreeSet<Literal>> {
    s.with_name("inLoop")
        .map(|a| {
            labels
                .literal(&a.args[0])
                .cloned()
                .ok_or_else(|| Error::SolverFailure(format!("unknown literal label {}", a.args[0])))
        })
        .collect()
}

pub fn cross_check(p: &Program, i: &Interpretation, solver: &SolverConfig) -> Result<CrossCheckReport> {
    let native = explain(p, i)?;
    let labels = LabelTable::new(p, i)?;
    let unsat = run_meta_with(p, i, solver, ":- not unsatisfied.\n#show guessRule/1. #show subst/2.")?;
    let loops = run_meta_with(p, i, solver, ":- not isLoop.\n:- not unfounded.\n#show inLoop/1.")?;
    let any = run_meta_with(p, i, solver, "#show notAnswerSet/0.")?;
    let uncovered = run_meta_with(p, i, solver, ":- unsatisfied.\n:- unfounded.\n#show notAnswerSet/0.")?;
    Ok(CrossCheckReport {
        native_unsatisfied: native
            .unsatisfied
            .iter()
            .map(|u| (u.rule_index, u.subst.clone()))
            .collect(),
        meta_unsatisfied: unsat.iter().map(|s| unsat_pair(s, &labels)).collect::<Result<_>>()?,
        native_loops: native.loops().into_iter().collect(),
        meta_loops: loops.iter().map(|s| loop_members(s, &labels)).collect::<Result<_>>()?,
        native_is_answer_set: native.is_answer_set(),
        meta_has_answer_set: !any.is_empty(),
        meta_uncovered: !uncovered.is_empty(),
    })
}
