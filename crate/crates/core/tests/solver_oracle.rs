mod common;

use common::{tiny_problem, TinyProblem};
use peerassign_core::oracle::{brute_force_best_matching, enumerate_feasible_matchings, EnumerationGuard};
use peerassign_core::solver::{objective_value, solve_bmatching, WeightObjective};
use peerassign_core::{EdgeMask, Error, Matrix};
use proptest::prelude::*;

fn solve_scaled(p: &TinyProblem, weights: &Matrix, scale: u64) -> Option<i64> {
    let obj = WeightObjective::with_cost_scale(weights.clone(), scale).unwrap();
    match solve_bmatching(&obj, &p.mask, &p.bounds) {
        Ok(x) => {
            assert!(p.bounds.admits(&x));
            assert!(x.is_subset_of(p.mask.as_matching()));
            Some(obj.scaled_value(&x).unwrap())
        }
        Err(Error::Infeasible) => None,
        Err(e) => panic!("unexpected error {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn solver_matches_enumeration(p in tiny_problem(5, 3, true)) {
        let obj = WeightObjective::new(p.weights.clone());
        let brute = brute_force_best_matching(&obj, &p.mask, &p.bounds, EnumerationGuard::default()).unwrap();
        let solved = solve_scaled(&p, &p.weights, 1_000_000);
        prop_assert_eq!(solved, brute.map(|(_, v)| v));
    }

    #[test]
    fn shrinking_the_mask_never_helps(p in tiny_problem(5, 3, true), drop in (0usize..5, 0usize..3)) {
        let (i, j) = (drop.0 % p.bounds.papers(), drop.1 % p.bounds.reviewers());
        let narrowed = TinyProblem { mask: p.mask.without(i, j), ..p.clone() };
        let full = solve_scaled(&p, &p.weights, 1_000_000);
        let less = solve_scaled(&narrowed, &p.weights, 1_000_000);
        match (full, less) {
            (Some(a), Some(b)) => prop_assert!(b <= a),
            (None, Some(_)) => prop_assert!(false, "removing an edge created feasibility"),
            _ => {}
        }
    }

    #[test]
    fn positive_rescaling_keeps_the_optimum(p in tiny_problem(5, 3, true), factor in 1u32..=7) {
        // At scale 1000 three-decimal weights are integers, and so are their
        // multiples; every scaled value is exact.
        let scaled = p.weights.map(|w| w * factor as f64);
        let base = solve_scaled(&p, &p.weights, 1000);
        let obj = WeightObjective::with_cost_scale(p.weights.clone(), 1000).unwrap();
        if let Ok(x) = solve_bmatching(&WeightObjective::with_cost_scale(scaled.clone(), 1000).unwrap(), &p.mask, &p.bounds) {
            prop_assert_eq!(Some(obj.scaled_value(&x).unwrap()), base);
        } else {
            prop_assert_eq!(base, None);
        }
    }

    #[test]
    fn every_enumerated_matching_is_feasible(p in tiny_problem(4, 3, false)) {
        let all: Vec<_> = enumerate_feasible_matchings(&p.bounds, &p.mask, EnumerationGuard::default()).unwrap().collect();
        for x in &all {
            prop_assert!(p.bounds.admits(x));
            prop_assert!(x.is_subset_of(p.mask.as_matching()));
        }
        let mut uniq = all.clone();
        uniq.sort();
        uniq.dedup();
        prop_assert_eq!(uniq.len(), all.len());
    }
}

#[test]
fn t1_value_and_matching_count() {
    let w = Matrix::from_rows(&[[0.9, 0.3], [0.6, 0.5], [0.1, 0.8]]).unwrap();
    let bounds = peerassign_core::DegreeBounds::new(vec![1; 3], vec![1; 3], vec![2, 2]).unwrap();
    let mask = EdgeMask::full(3, 2);
    let all: Vec<_> = enumerate_feasible_matchings(&bounds, &mask, EnumerationGuard::default())
        .unwrap()
        .collect();
    assert_eq!(all.len(), 6);
    let best = all
        .iter()
        .map(|x| objective_value(&w, x))
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((best - 2.3).abs() < 1e-12);
    let x = solve_bmatching(&WeightObjective::new(w.clone()), &mask, &bounds).unwrap();
    assert!((objective_value(&w, &x) - best).abs() < 1e-12);
}
