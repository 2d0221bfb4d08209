//! Quality matrices from topic vectors and seeded synthetic effort matrices.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::matrix::Matrix;
use crate::{Error, Result};

pub const DEFAULT_POSITIVITY_FLOOR: f64 = 1e-6;

/// Topic profiles of papers and reviewers, all of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicVectors {
    pub paper_vecs: Vec<Vec<f64>>,
    pub reviewer_vecs: Vec<Vec<f64>>,
}

impl TopicVectors {
    pub fn dimension(&self) -> usize {
        self.paper_vecs
            .first()
            .or(self.reviewer_vecs.first())
            .map_or(0, Vec::len)
    }
}

/// `(W_E)_ij = ⟨v_{p_i}, v_{r_j}⟩`, optionally scaled so the largest entry is 1.
pub fn quality_from_topics(tv: &TopicVectors, normalize: bool) -> Result<Matrix> {
    let r = tv.dimension();
    for (side, vecs) in [("paper", &tv.paper_vecs), ("reviewer", &tv.reviewer_vecs)] {
        for (index, v) in vecs.iter().enumerate() {
            if v.len() != r {
                return Err(Error::Shape("topic vectors differ in dimension"));
            }
            if v.iter().any(|&x| x < 0.0) {
                return Err(Error::NegativeTopicWeight { side, index });
            }
        }
    }
    let w = Matrix::from_fn(tv.paper_vecs.len(), tv.reviewer_vecs.len(), |i, j| {
        tv.paper_vecs[i]
            .iter()
            .zip(&tv.reviewer_vecs[j])
            .map(|(a, b)| a * b)
            .sum()
    });
    match w.max() {
        Some(top) if normalize && top > 0.0 => Ok(w.map(|v| v / top)),
        _ => Ok(w),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EffortFamily {
    /// `K − W_E − χ` with `χ ~ N(0, σ)`, `σ` the standard deviation.
    Aligned { sigma: f64 },
    /// `χ ~ U(0, 1]`.
    Uniform,
    /// `χ ~ Exp(rate)`, mean `1 / rate`.
    Exponential { rate: f64 },
}

impl EffortFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EffortFamily::Aligned { sigma } if !(sigma > 0.0 && sigma.is_finite()) => {
                Err(Error::InvalidParameter("sigma must be positive"))
            }
            EffortFamily::Exponential { rate } if !(rate > 0.0 && rate.is_finite()) => {
                Err(Error::InvalidParameter("rate must be positive"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortGenConfig {
    pub family: EffortFamily,
    pub seed: u64,
    pub positivity_floor: f64,
}

impl EffortGenConfig {
    pub fn new(family: EffortFamily, seed: u64) -> Self {
        Self {
            family,
            seed,
            positivity_floor: DEFAULT_POSITIVITY_FLOOR,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Effort matrix for `quality` according to `cfg`. Random families ignore
/// the values of `quality` and use only its shape.
pub fn generate_effort(quality: &Matrix, cfg: &EffortGenConfig) -> Result<Matrix> {
    cfg.family.validate()?;
    match cfg.family {
        EffortFamily::Aligned { sigma } => gen_aligned(quality, sigma, cfg.seed, cfg.positivity_floor),
        family => gen_random(quality.rows(), quality.cols(), family, cfg.seed, cfg.positivity_floor),
    }
}

/// `(W_R)_ij = K − (W_E)_ij − χ_ij` with `K = max W_E + 1`, clamped below at
/// `floor`.
pub fn gen_aligned(quality: &Matrix, sigma: f64, seed: u64, floor: f64) -> Result<Matrix> {
    EffortFamily::Aligned { sigma }.validate()?;
    let normal = Normal::new(0.0, sigma).map_err(|_| Error::InvalidParameter("sigma must be positive"))?;
    let mut rng = rng(seed);
    Ok(aligned_with_noise(quality, floor, || normal.sample(&mut rng)))
}

/// The aligned construction with caller-supplied noise draws, row-major.
pub fn aligned_with_noise(quality: &Matrix, floor: f64, mut noise: impl FnMut() -> f64) -> Matrix {
    let k = quality.max().unwrap_or(0.0) + 1.0;
    Matrix::from_fn(quality.rows(), quality.cols(), |i, j| {
        (k - quality.get(i, j) - noise()).max(floor)
    })
}

/// I.i.d. effort entries from the uniform or exponential family.
pub fn gen_random(rows: usize, cols: usize, family: EffortFamily, seed: u64, floor: f64) -> Result<Matrix> {
    family.validate()?;
    let mut rng = rng(seed);
    // 1 − U[0,1) lies in (0, 1]
    let mut unit = move || 1.0 - rng.random::<f64>();
    match family {
        EffortFamily::Uniform => Ok(Matrix::from_fn(rows, cols, |_, _| unit().max(floor))),
        EffortFamily::Exponential { rate } => Ok(Matrix::from_fn(rows, cols, |_, _| {
            (-libm::log(unit()) / rate).max(floor)
        })),
        EffortFamily::Aligned { .. } => Err(Error::InvalidParameter("aligned efforts need a quality matrix")),
    }
}

/// Seeded topic profiles normalized to sum 1. Papers carry 1–3 topics;
/// reviewers put a small background weight on every topic plus 2–5 focus
/// topics.
pub fn synthetic_topics(papers: usize, reviewers: usize, dimension: usize, seed: u64) -> TopicVectors {
    let mut rng = rng(seed);
    let mut profile = |lo: usize, hi: usize, background: f64| -> Vec<f64> {
        let mut v: Vec<f64> = (0..dimension).map(|_| background * rng.random::<f64>()).collect();
        if dimension == 0 {
            return v;
        }
        let count = rng.random_range(lo..=hi).min(dimension);
        let mut focus: Vec<usize> = Vec::with_capacity(count);
        while focus.len() < count {
            let t = rng.random_range(0..dimension);
            if !focus.contains(&t) {
                focus.push(t);
                v[t] += rng.random_range(0.1..1.0);
            }
        }
        let total: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= total);
        v
    };
    let paper_vecs = (0..papers).map(|_| profile(1, 3, 0.0)).collect();
    let reviewer_vecs = (0..reviewers).map(|_| profile(2, 5, 0.05)).collect();
    TopicVectors {
        paper_vecs,
        reviewer_vecs,
    }
}
