//! Classical satisfaction, the Gelfond-Lifschitz reduct and a brute-force
//! answer-set checker and enumerator for small programs.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::grounder::{eval_builtin, ground, GroundProgram, GroundRule};
use crate::model::{BodyAtom, Interpretation, Literal, Program, Rule};

/// Subset searches are limited to `2^SUBSET_BUDGET_BITS` candidates.
pub const SUBSET_BUDGET_BITS: u32 = 20;

trait LiteralSet {
    fn has(&self, l: &Literal) -> bool;
}

impl LiteralSet for Interpretation {
    fn has(&self, l: &Literal) -> bool {
        self.contains(l)
    }
}

impl LiteralSet for HashSet<&Literal> {
    fn has(&self, l: &Literal) -> bool {
        self.contains(l)
    }
}

fn holds<S: LiteralSet>(set: &S, head: &[Literal], pos: &[Literal], neg: &[Literal]) -> bool {
    let body = pos.iter().all(|l| set.has(l)) && !neg.iter().any(|l| set.has(l));
    !body || head.iter().any(|l| set.has(l))
}

/// `I |= r` for a ground instance.
pub fn satisfies(i: &Interpretation, r: &GroundRule) -> bool {
    holds(i, &r.head, &r.pos, &r.neg)
}

/// `I |= r` for a ground rule that may still carry comparisons.
pub fn satisfies_rule(i: &Interpretation, r: &Rule) -> Result<bool> {
    if let Some(l) = r.literals().find(|l| !l.is_ground()) {
        return Err(Error::NonGround(l.to_string()));
    }
    let mut pos = Vec::new();
    for atom in &r.pos {
        match atom {
            BodyAtom::Lit(l) => pos.push(l.clone()),
            BodyAtom::Builtin(b) if !b.is_ground() => return Err(Error::NonGround(b.to_string())),
            BodyAtom::Builtin(b) => {
                if !eval_builtin(b) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(holds(i, &r.head, &pos, &r.neg))
}

pub fn is_model(i: &Interpretation, g: &GroundProgram) -> bool {
    g.rules.iter().all(|r| satisfies(i, r))
}

/// A negation-free rule of the reduct; `source` indexes the ground program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductRule {
    pub source: usize,
    pub head: Vec<Literal>,
    pub pos: Vec<Literal>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduct {
    pub rules: Vec<ReductRule>,
}

impl Reduct {
    fn is_model_of<S: LiteralSet>(&self, set: &S) -> bool {
        self.rules.iter().all(|r| holds(set, &r.head, &r.pos, &[]))
    }

    /// Least fixpoint of the single-head rules; contained in every model.
    fn definite_closure(&self) -> HashSet<&Literal> {
        let mut closed: HashSet<&Literal> = HashSet::new();
        loop {
            let before = closed.len();
            for r in &self.rules {
                if r.head.len() == 1 && r.pos.iter().all(|l| closed.contains(l)) {
                    closed.insert(&r.head[0]);
                }
            }
            if closed.len() == before {
                return closed;
            }
        }
    }
}

pub fn reduct(g: &GroundProgram, i: &Interpretation) -> Reduct {
    Reduct {
        rules: g
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.neg.iter().any(|l| i.contains(l)))
            .map(|(source, r)| ReductRule {
                source,
                head: r.head.clone(),
                pos: r.pos.clone(),
            })
            .collect(),
    }
}

fn budget_check(bits: usize, what: &str) -> Result<()> {
    if bits > SUBSET_BUDGET_BITS as usize {
        Err(Error::BudgetExceeded(format!(
            "{what} would examine 2^{bits} subsets (limit 2^{SUBSET_BUDGET_BITS})"
        )))
    } else {
        Ok(())
    }
}

/// Answer-set check against an already grounded program: `I` must be a
/// minimal model of the reduct.
pub fn is_answer_set_ground(g: &GroundProgram, i: &Interpretation) -> Result<bool> {
    if !is_model(i, g) {
        return Ok(false);
    }
    let red = reduct(g, i);
    let forced = red.definite_closure();
    if forced.iter().any(|l| !i.contains(l)) {
        return Ok(false);
    }
    let free: Vec<&Literal> = i.iter().filter(|l| !forced.contains(l)).collect();
    budget_check(free.len(), "the minimality check")?;
    let full = (1u64 << free.len()) - 1;
    for mask in 0..full {
        let mut j = forced.clone();
        j.extend(
            free.iter()
                .enumerate()
                .filter(|(k, _)| (mask >> k) & 1 == 1)
                .map(|(_, l)| *l),
        );
        if red.is_model_of(&j) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_answer_set(p: &Program, i: &Interpretation) -> Result<bool> {
    is_answer_set_ground(&ground(p), i)
}

/// Literals the enumerator searches over. `forced` holds in every model of
/// the program; every answer set lies within `forced ∪ open`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateBase {
    pub forced: BTreeSet<Literal>,
    pub open: Vec<Literal>,
}

pub fn candidate_base(g: &GroundProgram) -> CandidateBase {
    let mut forced: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let before = forced.len();
        for r in &g.rules {
            if r.head.len() == 1 && r.neg.is_empty() && r.pos.iter().all(|l| forced.contains(l)) {
                forced.insert(r.head[0].clone());
            }
        }
        if forced.len() == before {
            break;
        }
    }
    let mut derivable: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let before = derivable.len();
        for r in &g.rules {
            if r.pos.iter().all(|l| derivable.contains(l)) {
                derivable.extend(r.head.iter().cloned());
            }
        }
        if derivable.len() == before {
            break;
        }
    }
    let open = derivable.difference(&forced).cloned().collect();
    CandidateBase { forced, open }
}

/// All answer sets of `p` (at most `limit`), sorted.
pub fn enumerate_answer_sets(p: &Program, limit: Option<usize>) -> Result<Vec<Interpretation>> {
    let g = ground(p);
    let base = candidate_base(&g);
    if base.forced.iter().any(|l| base.forced.contains(&l.complement())) {
        return Ok(Vec::new());
    }
    budget_check(base.open.len(), "answer-set enumeration")?;
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << base.open.len()) {
        if limit.is_some_and(|k| found.len() >= k) {
            break;
        }
        let chosen = base
            .open
            .iter()
            .enumerate()
            .filter(|(k, _)| (mask >> k) & 1 == 1)
            .map(|(_, l)| l.clone());
        let Ok(candidate) = Interpretation::new(base.forced.iter().cloned().chain(chosen)) else {
            continue;
        };
        if is_answer_set_ground(&g, &candidate)? {
            found.push(candidate);
        }
    }
    found.sort();
    Ok(found)
}
