//! Editor/reviewer paper assignment.
//!
//! The crate covers the classic quality-maximizing b-matching, the bilevel
//! model in which the editor proposes papers, reviewers bid on the ones that
//! cost them the least effort and the editor assigns within the bids, and the
//! greedy heuristic that solves the bilevel model with three polynomial steps.
//! Around those sit the comparison metrics, synthetic effort generators,
//! diversity/entropy penalty functionals and exhaustive oracles used to check
//! everything on small instances.
//!
//! All matrices are `n × m` with papers as rows and reviewers as columns.
//! Indices are 0-based; the companion `peerassign` crate converts to 1-based
//! IDs at its file and report boundaries.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baselines;
pub mod datagen;
mod error;
mod flow;
pub mod heuristic;
pub mod instance;
pub mod lower_level;
pub mod matrix;
pub mod metrics;
pub mod oracle;
pub mod solver;
pub mod svp;

pub use baselines::{solve_pure_quality, solve_t_tuned, TunedConfig};
pub use error::Error;
pub use heuristic::{accordance, greedy_proposal, heuristic_solve, solve_without_freedom, BpOutcome, BpTriplet};
pub use instance::{ProblemInstance, Violation};
pub use lower_level::{bid_all, bid_reviewer, BidColumn};
pub use matrix::{EdgeMask, Matching, Matrix};
pub use metrics::{compute_report, fr, is_phi_weakly_fair, qp, raer, BurdenThreshold, MetricsReport};
pub use solver::{objective_value, solve_bmatching, DegreeBounds, WeightObjective};

pub type Result<T, E = Error> = core::result::Result<T, E>;
