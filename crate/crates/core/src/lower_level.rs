//! Reviewers' best response to a proposal.
//!
//! Each reviewer bids on exactly `U_j` of the papers proposed to them and
//! minimizes their own effort. The LP relaxation of a single column has the
//! same optimum as the binary problem, and minimizing every column separately
//! minimizes the total effort, so the response is a per-column selection of
//! the `U_j` cheapest proposed papers.

use alloc::vec::Vec;

use crate::instance::smallest_k_among;
use crate::matrix::{Matching, Matrix, Shaped};
use crate::{Error, Result};

/// One reviewer's bid.
#[derive(Debug, Clone, PartialEq)]
pub struct BidColumn {
    /// Paper indices, ascending.
    pub selected: Vec<usize>,
    pub effort_total: f64,
}

/// The `capacity` proposed papers with the smallest effort (lower index wins
/// ties).
pub fn bid_reviewer(proposal: &[bool], effort: &[f64], capacity: usize) -> Result<BidColumn> {
    bid_column(proposal, effort, capacity, 0)
}

fn bid_column(proposal: &[bool], effort: &[f64], capacity: usize, reviewer: usize) -> Result<BidColumn> {
    if proposal.len() != effort.len() {
        return Err(Error::Shape("proposal and effort columns differ in length"));
    }
    let proposed: Vec<usize> = (0..proposal.len()).filter(|&i| proposal[i]).collect();
    if proposed.len() < capacity {
        return Err(Error::ProposalTooSmall {
            reviewer,
            proposed: proposed.len(),
            capacity,
        });
    }
    let selected = smallest_k_among(effort, &proposed, capacity);
    let effort_total = selected.iter().map(|&i| effort[i]).sum();
    Ok(BidColumn { selected, effort_total })
}

/// The bidding `Y` for proposal `Z`: column `j` is `bid_reviewer` on column `j`.
pub fn bid_all(proposal: &Matching, effort: &Matrix, capacity: &[usize]) -> Result<Matching> {
    let (n, m) = proposal.shape();
    if effort.shape() != (n, m) || capacity.len() != m {
        return Err(Error::Shape("proposal, effort and capacities disagree on n × m"));
    }
    let mut bids = Matching::empty(n, m);
    for (j, &cap) in capacity.iter().enumerate() {
        let col = bid_column(&proposal.column(j), &effort.column(j), cap, j)?;
        for i in col.selected {
            bids.set(i, j, true);
        }
    }
    Ok(bids)
}
