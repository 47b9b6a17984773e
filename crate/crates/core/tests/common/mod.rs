//! Fixture loading and random instances shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use aspdebug::grounder::ground;
use aspdebug::{enumerate_answer_sets, parse_interpretation, parse_program, Interpretation, Literal, Program};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn program(name: &str) -> Program {
    parse_program(&fixture_text(name)).unwrap()
}

pub fn interpretation(name: &str) -> Interpretation {
    parse_interpretation(&fixture_text(name)).unwrap()
}

pub fn lits(xs: &[&str]) -> BTreeSet<Literal> {
    xs.iter().map(|x| aspdebug::parse_literal(x).unwrap()).collect()
}

/// The program/interpretation pairs of the worked scenarios.
pub const SCENARIOS: [(&str, &str); 5] = [
    ("lucy1.lp", "s1.int"),
    ("lucy2.lp", "e1.int"),
    ("lucy2.lp", "e2.int"),
    ("linus1.lp", "e3.int"),
    ("patty1.lp", "e4.int"),
];

const PREDICATES: [(&str, usize); 5] = [("a", 0), ("b", 0), ("p", 1), ("q", 1), ("r", 2)];
const CONSTANTS: [&str; 3] = ["x", "y", "z"];
const VARIABLES: [&str; 2] = ["X", "Y"];

fn random_literal(rng: &mut StdRng, consts: &[&str]) -> String {
    let (name, arity) = PREDICATES[rng.gen_range(0..PREDICATES.len())];
    let neg = if rng.gen_bool(0.15) { "-" } else { "" };
    if arity == 0 {
        return format!("{neg}{name}");
    }
    let args: Vec<&str> = (0..arity)
        .map(|_| {
            if rng.gen_bool(0.5) {
                VARIABLES[rng.gen_range(0..VARIABLES.len())]
            } else {
                consts[rng.gen_range(0..consts.len())]
            }
        })
        .collect();
    format!("{neg}{name}({})", args.join(","))
}

/// A random comparison-free program with at most six rules, three
/// constants, arity at most two, and optional disjunction and negation.
pub fn random_program(rng: &mut StdRng) -> Program {
    let consts = &CONSTANTS[..rng.gen_range(1..=CONSTANTS.len())];
    let n = rng.gen_range(1..=6);
    let mut text = String::new();
    for _ in 0..n {
        let heads = rng.gen_range(0..=2);
        let pos = rng.gen_range(0..=2);
        let neg = rng.gen_range(0..=if heads == 0 { 2 } else { 1 });
        let (pos, neg) = if heads == 0 && pos + neg == 0 { (1, 0) } else { (pos, neg) };
        let head: Vec<String> = (0..heads).map(|_| random_literal(rng, consts)).collect();
        let mut body: Vec<String> = (0..pos).map(|_| random_literal(rng, consts)).collect();
        body.extend((0..neg).map(|_| format!("not {}", random_literal(rng, consts))));
        text.push_str(&head.join(" | "));
        if !body.is_empty() {
            text.push_str(" :- ");
            text.push_str(&body.join(", "));
        }
        text.push_str(".\n");
    }
    parse_program(&text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Up to ten ground literals a random interpretation is drawn from.
pub fn candidate_literals(rng: &mut StdRng, p: &Program) -> Vec<Literal> {
    let mut c: Vec<Literal> = ground(p).literals().into_iter().collect();
    c.shuffle(rng);
    c.truncate(10);
    c.sort();
    c
}

/// Random consistent interpretations over `candidates`, all of them when
/// there are at most `2^exhaustive_bits`.
pub fn interpretations_over(
    rng: &mut StdRng,
    candidates: &[Literal],
    exhaustive_bits: usize,
    samples: usize,
) -> Vec<Interpretation> {
    let masks: Vec<u32> = if candidates.len() <= exhaustive_bits {
        (0..1u32 << candidates.len()).collect()
    } else {
        (0..samples).map(|_| rng.gen_range(0..1u32 << candidates.len())).collect()
    };
    masks
        .into_iter()
        .filter_map(|m| {
            Interpretation::new(
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| (m >> k) & 1 == 1)
                    .map(|(_, l)| l.clone()),
            )
            .ok()
        })
        .collect()
}

/// A random program with a handful of interpretations, including its
/// answer sets when they are cheap to find.
pub fn random_pairs(rng: &mut StdRng, per_program: usize) -> (Program, Vec<Interpretation>) {
    let p = random_program(rng);
    let cands = candidate_literals(rng, &p);
    let mut is = interpretations_over(rng, &cands, 0, per_program);
    if let Ok(sets) = enumerate_answer_sets(&p, Some(2)) {
        is.extend(sets);
    }
    (p, is)
}
