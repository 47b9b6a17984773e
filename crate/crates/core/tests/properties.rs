mod common;

use std::collections::BTreeSet;

use aspdebug::loops::{dep_graph, is_loop};
use aspdebug::model::compare;
use aspdebug::semantics::is_model;
use aspdebug::{
    enumerate_answer_sets, explain, explain_with, ground, is_answer_set, parse_program, unfounded, Constant,
    ExplainOptions, Interpretation, Literal,
};
use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn pair(seed: u64) -> (aspdebug::Program, Interpretation) {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = random_program(&mut rng);
    let cands = candidate_literals(&mut rng, &p);
    let i = interpretations_over(&mut rng, &cands, 0, 1).pop().unwrap_or_else(Interpretation::empty);
    (p, i)
}

fn term() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        "[XYZ]".prop_map(String::from),
        "[a-c]".prop_map(String::from),
        (0u64..20).prop_map(|n| n.to_string()),
    ];
    leaf.prop_recursive(2, 6, 2, |t| {
        (t.clone(), prop_oneof![Just("+"), Just("*")], t).prop_map(|(a, op, b)| format!("({a} {op} {b})"))
    })
}

fn builtin() -> impl Strategy<Value = String> {
    (term(), prop_oneof![Just("="), Just("!="), Just("<"), Just("<="), Just(">"), Just(">=")], term())
        .prop_map(|(a, op, b)| format!("{a} {op} {b}"))
}

fn constant() -> impl Strategy<Value = Constant> {
    prop_oneof![(0u64..50).prop_map(Constant::Num), "[a-e]{1,2}".prop_map(|s| Constant::sym(&s))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>(), b in builtin()) {
        let (p, _) = pair(seed);
        prop_assert_eq!(parse_program(&p.to_string()).unwrap(), p.clone());
        let with_builtin = parse_program(&format!("p(X) :- q(X, Y), {b}.")).unwrap();
        prop_assert_eq!(parse_program(&with_builtin.to_string()).unwrap(), with_builtin);
    }

    #[test]
    fn interpretations_reject_complementary_pairs(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_program(&mut rng);
        let cands = candidate_literals(&mut rng, &p);
        if let Some(l) = cands.first() {
            prop_assert!(Interpretation::new([l.clone(), l.complement()]).is_err());
        }
        for i in interpretations_over(&mut rng, &cands, 0, 5) {
            prop_assert!(i.iter().all(|l| !i.contains(&l.complement())));
        }
    }

    #[test]
    fn constant_order_is_total(a in constant(), b in constant(), c in constant()) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b).is_eq(), a == b);
        if compare(&a, &b).is_le() && compare(&b, &c).is_le() {
            prop_assert!(compare(&a, &c).is_le());
        }
        if let (Constant::Num(_), Constant::Sym(_)) = (&a, &b) {
            prop_assert!(compare(&a, &b).is_lt());
        }
    }

    #[test]
    fn grounding_yields_ground_rules(seed in any::<u64>()) {
        let (p, _) = pair(seed);
        for r in &ground(&p).rules {
            prop_assert!(r.to_rule().is_ground());
            prop_assert!(p.rules[r.rule_index].vars().iter().all(|v| r.subst.get(v).is_some()));
        }
    }

    #[test]
    fn answer_sets_are_incomparable_models(seed in any::<u64>()) {
        let (p, _) = pair(seed);
        let g = ground(&p);
        let sets = enumerate_answer_sets(&p, None).unwrap();
        for s in &sets {
            prop_assert!(is_model(s, &g));
            prop_assert!(explain(&p, s).unwrap().is_answer_set());
            for t in &sets {
                prop_assert!(s == t || !s.literals().is_subset(t.literals()));
            }
        }
    }

    #[test]
    fn verdict_matches_answer_set_check(seed in any::<u64>()) {
        let (p, i) = pair(seed);
        prop_assert_eq!(explain(&p, &i).unwrap().is_answer_set(), is_answer_set(&p, &i).unwrap());
    }

    #[test]
    fn minimal_loops_are_an_antichain_of_reported_loops(seed in any::<u64>()) {
        let (p, i) = pair(seed);
        let all: BTreeSet<_> = explain(&p, &i).unwrap().loops().into_iter().collect();
        let opts = ExplainOptions { minimal_loops: true, ..Default::default() };
        let min = explain_with(&p, &i, &opts).unwrap().loops();
        for a in &min {
            prop_assert!(all.contains(a));
            prop_assert!(min.iter().all(|b| a == b || !b.is_subset(a)));
        }
        for a in &all {
            prop_assert!(min.iter().any(|m| m.is_subset(a)));
        }
    }

    #[test]
    fn every_literal_of_i_is_a_loop(seed in any::<u64>()) {
        let (p, i) = pair(seed);
        let g = dep_graph(&ground(&p), &i);
        for l in i.iter() {
            prop_assert!(is_loop(&BTreeSet::from([l.clone()]), &g));
        }
    }

    #[test]
    fn reported_loops_are_unfounded_loops_within_i(seed in any::<u64>()) {
        let (p, i) = pair(seed);
        let g = ground(&p);
        let d = dep_graph(&g, &i);
        for l in explain(&p, &i).unwrap().loops() {
            prop_assert!(l.iter().all(|x| i.contains(x)));
            prop_assert!(is_loop(&l, &d));
            prop_assert!(unfounded(&l, &g, &i));
        }
    }

    #[test]
    fn answer_sets_have_no_unfounded_subsets(seed in any::<u64>()) {
        let (p, _) = pair(seed);
        let g = ground(&p);
        for s in enumerate_answer_sets(&p, Some(3)).unwrap() {
            let lits: Vec<Literal> = s.iter().cloned().collect();
            for mask in 1u32..(1 << lits.len().min(8)) {
                let j: BTreeSet<Literal> =
                    lits.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, l)| l.clone()).collect();
                prop_assert!(!unfounded(&j, &g, &s), "{} has unfounded subset {:?}", s, j);
            }
        }
    }
}
