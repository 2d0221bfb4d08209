#![allow(clippy::needless_range_loop)]

mod common;

use peerassign_core::lower_level::{bid_all, bid_reviewer};
use peerassign_core::oracle::{all_optimal_bids, combinations};
use peerassign_core::{Matching, Matrix};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

/// Fractional vector in `[0, 1]^b` summing to `a`: start from uniform
/// draws, rescale, then push any excess above 1 onto entries with slack.
fn fractional_point(rng: &mut SmallRng, b: usize, a: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..b).map(|_| rng.random::<f64>() + 1e-9).collect();
    let total: f64 = raw.iter().sum();
    let mut x: Vec<f64> = raw.iter().map(|v| v * a as f64 / total).collect();
    loop {
        let excess: f64 = x.iter().map(|v| (v - 1.0).max(0.0)).sum();
        if excess <= 0.0 {
            break;
        }
        for v in x.iter_mut() {
            *v = v.min(1.0);
        }
        let slack: f64 = x.iter().map(|v| 1.0 - v).sum();
        for v in x.iter_mut() {
            *v += (1.0 - *v) / slack * excess;
        }
    }
    x
}

#[test]
fn fractional_selection_never_beats_the_cheapest_prefix() {
    let mut rng = SmallRng::seed_from_u64(0x1e44a);
    let mut checked = 0;
    while checked < 1000 {
        let b = rng.random_range(2..=12);
        let a = rng.random_range(1..b);
        let mut w: Vec<f64> = (0..b).map(|_| rng.random_range(0.01..10.0)).collect();
        w.sort_by(f64::total_cmp);
        let x = fractional_point(&mut rng, b, a);
        assert!((x.iter().sum::<f64>() - a as f64).abs() < 1e-9);
        assert!(x.iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
        let prefix: f64 = w[..a].iter().sum();
        let mixed: f64 = w.iter().zip(&x).map(|(wi, xi)| wi * xi).sum();
        assert!(prefix <= mixed + 1e-12, "b={b} a={a} prefix={prefix} mixed={mixed}");
        checked += 1;
    }
}

fn column_case() -> impl Strategy<Value = (Vec<bool>, Vec<f64>, usize)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(1u32..=20, n),
            0usize..=3,
        )
            .prop_filter_map("too few proposed", |(prop, eff, cap)| {
                let proposed = prop.iter().filter(|&&b| b).count();
                (proposed >= cap).then(|| (prop, eff.into_iter().map(f64::from).collect(), cap))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bid_matches_subset_enumeration((proposal, effort, cap) in column_case()) {
        let bid = bid_reviewer(&proposal, &effort, cap).unwrap();
        let proposed: Vec<usize> = (0..proposal.len()).filter(|&i| proposal[i]).collect();
        let best = combinations(&proposed, cap)
            .iter()
            .map(|s| s.iter().map(|&i| effort[i]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(bid.effort_total, best);
        prop_assert_eq!(bid.selected.len(), cap);
        prop_assert!(bid.selected.iter().all(|&i| proposal[i]));
    }

    #[test]
    fn distinct_efforts_give_a_permutation_invariant_bid(
        n in 2usize..=10,
        cap in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let cap = cap.min(n);
        let mut effort: Vec<f64> = (1..=n).map(|v| v as f64).collect();
        effort.sort_by_key(|_| rng.random::<u32>());
        let proposal = vec![true; n];
        let base = bid_reviewer(&proposal, &effort, cap).unwrap().selected;
        // unique optimum
        prop_assert_eq!(all_optimal_bids(&(0..n).collect::<Vec<_>>(), &effort, cap), vec![base.clone()]);

        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|_| rng.random::<u32>());
        let permuted: Vec<f64> = perm.iter().map(|&p| effort[p]).collect();
        let mut back: Vec<usize> = bid_reviewer(&proposal, &permuted, cap)
            .unwrap()
            .selected
            .into_iter()
            .map(|k| perm[k])
            .collect();
        back.sort_unstable();
        prop_assert_eq!(back, base);
    }

    #[test]
    fn columnwise_bid_is_globally_optimal(
        n in 2usize..=5,
        m in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let effort = Matrix::from_fn(n, m, |_, _| rng.random_range(1..=9) as f64);
        let caps: Vec<usize> = (0..m).map(|_| rng.random_range(1..=n.min(2))).collect();
        let mut z = Matching::empty(n, m);
        for j in 0..m {
            let size = rng.random_range(caps[j]..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|_| rng.random::<u32>());
            for &i in &idx[..size] {
                z.set(i, j, true);
            }
        }
        let y = bid_all(&z, &effort, &caps).unwrap();
        prop_assert!(y.is_subset_of(&z));
        let total: f64 = y.edges().map(|(i, j)| effort.get(i, j)).sum();

        // Minimum over the full product of column choices.
        let mut best = vec![0.0f64];
        for j in 0..m {
            let costs: Vec<f64> = combinations(&z.column_papers(j), caps[j])
                .iter()
                .map(|s| s.iter().map(|&i| effort.get(i, j)).sum())
                .collect();
            best = best.iter().flat_map(|b| costs.iter().map(move |c| b + c)).collect();
        }
        let global = best.into_iter().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(total, global);
        for j in 0..m {
            prop_assert_eq!(y.col_sum(j), caps[j]);
        }
    }

    #[test]
    fn zero_freedom_bid_equals_proposal(p in common::tie_free_instance(6, 3, 2, 0, false)) {
        let z = peerassign_core::greedy_proposal(p.quality(), p.capacity(), p.freedom()).unwrap();
        prop_assert_eq!(bid_all(&z, p.effort(), p.capacity()).unwrap(), z);
    }
}

#[test]
fn three_papers_bids() {
    let inst = common::three_papers(vec![2, 2], vec![1, 1]);
    let y = bid_all(&Matching::full(3, 2), inst.effort(), inst.capacity()).unwrap();
    assert_eq!(y.column_papers(0), vec![1, 2]);
    assert_eq!(y.column_papers(1), vec![1, 2]);
}
