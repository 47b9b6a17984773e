//! Why is `I` not an answer set of `P`?
//!
//! `I` is an answer set iff it satisfies every ground instance of `P` and no
//! loop contained in `I` is unfounded. The explainer reports every violated
//! instance and every unfounded loop.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::grounder::{ground, GroundProgram, GroundRule};
use crate::loops::{dep_graph, loops_within, Loop, DEFAULT_LOOP_CAP};
use crate::model::{Interpretation, Literal, Program, Span, Substitution};
use crate::semantics::satisfies;
use crate::unfounded::{blocked_rules, unfounded, Condition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IsAnswerSet,
    NotAnswerSet,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::IsAnswerSet => "is-answer-set",
            Verdict::NotAnswerSet => "not-answer-set",
        }
    }
}

/// A ground instance of rule `rule_index` (0-based) that `I` violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsatisfiedFinding {
    pub rule_index: usize,
    pub subst: Substitution,
    pub instance: GroundRule,
    pub span: Option<Span>,
}

/// A rule that could derive a loop member but fails to support the loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedRule {
    pub instance: GroundRule,
    pub violated: Vec<Condition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedLiteral {
    pub literal: Literal,
    pub rules: Vec<BlockedRule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoundedLoopFinding {
    pub members: Loop,
    pub blocked: Vec<BlockedLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explanation {
    pub unsatisfied: Vec<UnsatisfiedFinding>,
    pub unfounded_loops: Vec<UnfoundedLoopFinding>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplainOptions {
    /// Report only subset-minimal unfounded loops.
    pub minimal_loops: bool,
    /// Stop after the first finding of each kind.
    pub first: bool,
    pub loop_cap: usize,
}

impl Default for ExplainOptions {
    fn default() -> Self {
        ExplainOptions {
            minimal_loops: false,
            first: false,
            loop_cap: DEFAULT_LOOP_CAP,
        }
    }
}

fn unsatisfied_in(p: &Program, g: &GroundProgram, i: &Interpretation, first: bool) -> Vec<UnsatisfiedFinding> {
    let found = g.rules.iter().filter(|r| !satisfies(i, r)).map(|r| UnsatisfiedFinding {
        rule_index: r.rule_index,
        subst: r.subst.clone(),
        instance: r.clone(),
        span: p.rules[r.rule_index].span,
    });
    if first {
        found.take(1).collect()
    } else {
        found.collect()
    }
}

/// Every `(rule, substitution)` whose instance `I` violates, in grounding
/// order.
pub fn find_unsatisfied(p: &Program, i: &Interpretation) -> Vec<UnsatisfiedFinding> {
    unsatisfied_in(p, &ground(p), i, false)
}

fn finding_for(l: Loop, g: &GroundProgram, i: &Interpretation) -> UnfoundedLoopFinding {
    let blocked = l
        .literals()
        .iter()
        .map(|lit| BlockedLiteral {
            literal: lit.clone(),
            rules: blocked_rules(lit, l.literals(), g, i)
                .into_iter()
                .map(|(r, violated)| BlockedRule {
                    instance: r.clone(),
                    violated,
                })
                .collect(),
        })
        .collect();
    UnfoundedLoopFinding { members: l, blocked }
}

fn unfounded_in(
    g: &GroundProgram,
    i: &Interpretation,
    opts: &ExplainOptions,
) -> Result<Vec<UnfoundedLoopFinding>> {
    let graph = dep_graph(g, i);
    let mut kept: Vec<Loop> = Vec::new();
    // loops arrive ordered by size, so minimal ones are kept before supersets
    for l in loops_within(i, &graph, opts.loop_cap)? {
        if opts.minimal_loops && kept.iter().any(|k| k.literals().is_subset(l.literals())) {
            continue;
        }
        if unfounded(l.literals(), g, i) {
            kept.push(l);
            if opts.first {
                break;
            }
        }
    }
    Ok(kept.into_iter().map(|l| finding_for(l, g, i)).collect())
}

/// Every loop of `P` contained in `I` that is unfounded.
pub fn find_unfounded_loops(p: &Program, i: &Interpretation, minimal_only: bool) -> Result<Vec<UnfoundedLoopFinding>> {
    let opts = ExplainOptions {
        minimal_loops: minimal_only,
        ..ExplainOptions::default()
    };
    unfounded_in(&ground(p), i, &opts)
}

pub fn explain(p: &Program, i: &Interpretation) -> Result<Explanation> {
    explain_with(p, i, &ExplainOptions::default())
}

pub fn explain_with(p: &Program, i: &Interpretation, opts: &ExplainOptions) -> Result<Explanation> {
    let g = ground(p);
    Ok(Explanation {
        unsatisfied: unsatisfied_in(p, &g, i, opts.first),
        unfounded_loops: unfounded_in(&g, i, opts)?,
    })
}

// JSON view; field names are part of the public schema.

#[derive(Serialize)]
struct UnsatisfiedJson {
    rule: usize,
    span: Option<Span>,
    rule_text: String,
    substitution: BTreeMap<String, String>,
    instance: String,
}

#[derive(Serialize)]
struct BlockedRuleJson {
    rule: usize,
    substitution: BTreeMap<String, String>,
    instance: String,
    violated: Vec<Condition>,
}

#[derive(Serialize)]
struct BlockedLiteralJson {
    literal: String,
    rules: Vec<BlockedRuleJson>,
}

#[derive(Serialize)]
struct LoopJson {
    literals: Vec<String>,
    blocked: Vec<BlockedLiteralJson>,
}

#[derive(Serialize)]
struct ExplanationJson {
    verdict: Verdict,
    unsatisfied: Vec<UnsatisfiedJson>,
    unfounded_loops: Vec<LoopJson>,
}

pub fn substitution_map(s: &Substitution) -> BTreeMap<String, String> {
    s.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

impl Explanation {
    pub fn verdict(&self) -> Verdict {
        if self.unsatisfied.is_empty() && self.unfounded_loops.is_empty() {
            Verdict::IsAnswerSet
        } else {
            Verdict::NotAnswerSet
        }
    }

    pub fn is_answer_set(&self) -> bool {
        self.verdict() == Verdict::IsAnswerSet
    }

    /// Loop member sets, in report order.
    pub fn loops(&self) -> Vec<BTreeSet<Literal>> {
        self.unfounded_loops
            .iter()
            .map(|f| f.members.literals().clone())
            .collect()
    }

    /// The JSON document served by the CLI and the HTTP API. Rule numbers
    /// are 1-based.
    pub fn to_json(&self, p: &Program) -> serde_json::Value {
        let doc = ExplanationJson {
            verdict: self.verdict(),
            unsatisfied: self
                .unsatisfied
                .iter()
                .map(|u| UnsatisfiedJson {
                    rule: u.rule_index + 1,
                    span: u.span,
                    rule_text: p.rules[u.rule_index].to_string(),
                    substitution: substitution_map(&u.subst),
                    instance: u.instance.to_string(),
                })
                .collect(),
            unfounded_loops: self
                .unfounded_loops
                .iter()
                .map(|f| LoopJson {
                    literals: f.members.literals().iter().map(ToString::to_string).collect(),
                    blocked: f
                        .blocked
                        .iter()
                        .map(|b| BlockedLiteralJson {
                            literal: b.literal.to_string(),
                            rules: b
                                .rules
                                .iter()
                                .map(|r| BlockedRuleJson {
                                    rule: r.instance.rule_index + 1,
                                    substitution: substitution_map(&r.instance.subst),
                                    instance: r.instance.to_string(),
                                    violated: r.violated.clone(),
                                })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("explanation serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict().as_str());
        for u in &self.unsatisfied {
            let _ = writeln!(out, "unsatisfied: rule {} {}", u.rule_index + 1, u.subst);
            let _ = writeln!(out, "    {}", u.instance);
        }
        for f in &self.unfounded_loops {
            let _ = writeln!(out, "unfounded loop: {}", f.members);
            for b in &f.blocked {
                if b.rules.is_empty() {
                    let _ = writeln!(out, "    {}: no rule derives it", b.literal);
                }
                for r in &b.rules {
                    let conds: Vec<&str> = r.violated.iter().map(|c| c.roman()).collect();
                    let _ = writeln!(
                        out,
                        "    {}: rule {} blocked by ({}): {}",
                        b.literal,
                        r.instance.rule_index + 1,
                        conds.join(", "),
                        r.instance
                    );
                }
            }
        }
        out
    }
}
