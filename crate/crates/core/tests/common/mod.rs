#![allow(dead_code)]

use peerassign_core::matrix::{EdgeMask, Matching, Matrix};
use peerassign_core::solver::DegreeBounds;
use peerassign_core::ProblemInstance;
use proptest::prelude::*;

/// Small assignment problem with 3-decimal weights.
#[derive(Debug, Clone)]
pub struct TinyProblem {
    pub weights: Matrix,
    pub mask: EdgeMask,
    pub bounds: DegreeBounds,
}

pub fn thousandths(n: usize, m: usize, lo: i32, hi: i32) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(lo..=hi, n * m)
        .prop_map(move |v| Matrix::from_row_major(n, m, v.into_iter().map(|k| k as f64 / 1000.0).collect()).unwrap())
}

pub fn tiny_problem(max_n: usize, max_m: usize, allow_negative: bool) -> impl Strategy<Value = TinyProblem> {
    (1..=max_n, 1..=max_m).prop_flat_map(move |(n, m)| {
        let lo = if allow_negative { -1000 } else { 0 };
        (
            thousandths(n, m, lo, 1000),
            prop::collection::vec(prop::bool::weighted(0.8), n * m),
            prop::collection::vec((0usize..=2, 0usize..=2), n),
            prop::collection::vec(0usize..=2, m),
        )
            .prop_map(move |(weights, bits, lu, caps)| {
                let mut mask = Matching::empty(n, m);
                for (k, b) in bits.into_iter().enumerate() {
                    mask.set(k / m, k % m, b);
                }
                let (l, u): (Vec<_>, Vec<_>) = lu.into_iter().map(|(a, b)| (a.min(b), a.max(b))).unzip();
                TinyProblem {
                    weights,
                    mask: EdgeMask::from_matching(mask),
                    bounds: DegreeBounds::new(l, u, caps).unwrap(),
                }
            })
    })
}

/// 4 papers, 3 reviewers, l = u = 1, U = 2, φ = 1.
pub fn small_instance() -> ProblemInstance {
    let quality = Matrix::from_rows(&[[0.9, 0.2, 0.1], [0.8, 0.7, 0.2], [0.2, 0.9, 0.6], [0.1, 0.3, 0.8]]).unwrap();
    let effort = Matrix::from_rows(&[[1.0, 5.0, 5.0], [2.0, 1.0, 4.0], [5.0, 2.0, 1.0], [4.0, 4.0, 2.0]]).unwrap();
    ProblemInstance::uniform(1, 1, 2, 1, quality, effort).unwrap()
}

/// Three papers, two reviewers, `W_R` columns (11, 10, 1) and (3, 2, 1);
/// both reviewers rank p1 > p2 > p3 by quality.
pub fn three_papers(capacity: Vec<usize>, freedom: Vec<usize>) -> ProblemInstance {
    let effort = Matrix::from_rows(&[[11.0, 3.0], [10.0, 2.0], [1.0, 1.0]]).unwrap();
    let quality = Matrix::from_rows(&[[0.9, 0.9], [0.5, 0.5], [0.1, 0.1]]).unwrap();
    ProblemInstance::new(vec![1; 3], vec![1; 3], capacity, freedom, quality, effort).unwrap()
}

/// Random valid instance whose efforts are pairwise distinct within each
/// column (a shuffled grid of integers). With `fixed_load` every paper gets
/// `l_i = u_i`, so all feasible assignments have the same size.
pub fn tie_free_instance(
    max_n: usize,
    max_m: usize,
    max_cap: usize,
    max_phi: usize,
    fixed_load: bool,
) -> impl Strategy<Value = ProblemInstance> {
    (2..=max_n, 1..=max_m)
        .prop_flat_map(move |(n, m)| {
            (
                thousandths(n, m, 0, 1000),
                prop::collection::vec(Just((1..=n).collect::<Vec<_>>()).prop_shuffle(), m),
                prop::collection::vec((0usize..=1, 1usize..=2), n),
                prop::collection::vec((1..=max_cap.min(n), 0..=max_phi), m),
            )
                .prop_map(move |(quality, columns, lu, cf)| {
                    let effort = Matrix::from_fn(n, m, |i, j| columns[j][i] as f64);
                    let (l, u): (Vec<_>, Vec<_>) = lu
                        .into_iter()
                        .map(|(a, b)| if fixed_load { (b, b) } else { (a.min(b), a.max(b)) })
                        .unzip();
                    let (cap, phi): (Vec<_>, Vec<_>) = cf.into_iter().map(|(c, f)| (c, f.min(n - c))).unzip();
                    let inst = ProblemInstance::new(l, u, cap, phi, quality, effort).ok()?;
                    inst.is_valid().then_some(inst)
                })
        })
        .prop_filter_map("invalid instance", |inst| inst)
}
