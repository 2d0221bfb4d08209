use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no binary matching satisfies the degree bounds under the edge mask")]
    Infeasible,
    #[error("dimension mismatch: {0}")]
    Shape(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("proposal too small: reviewer {reviewer} was proposed {proposed} papers but must bid on {capacity}")]
    ProposalTooSmall {
        reviewer: usize,
        proposed: usize,
        capacity: usize,
    },
    #[error("reviewer {reviewer} cannot be proposed {requested} papers out of {papers}")]
    ProposalTooLarge {
        reviewer: usize,
        requested: usize,
        papers: usize,
    },
    #[error("scaled weights overflow the solver's integer cost range")]
    CostOverflow,
    #[error("degenerate baseline: {0}")]
    DegenerateBaseline(&'static str),
    #[error("negative entry in topic vector {index} of the {side} side")]
    NegativeTopicWeight { side: &'static str, index: usize },
    #[error("instance too large for enumeration: {candidates} candidates exceed the limit of {limit}")]
    EnumerationLimit { candidates: u128, limit: u64 },
}
