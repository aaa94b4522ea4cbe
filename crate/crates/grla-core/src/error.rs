//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("missing parameter `{0}` in assignment")]
    MissingParameter(String),

    #[error("parameter index {0} is outside the free set {1:?}")]
    IndexOutsideFreeSet(usize, Vec<usize>),

    #[error("invalid grading parameters: {0}")]
    InvalidGrading(String),

    #[error("operation requires rank one (r = 1), got r = {0}")]
    RankNotOne(usize),

    #[error("operation requires r >= 1")]
    RankZero,

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error(
        "type BD closed-form b-function is only displayed for q >= 2 (got q = {0}); \
         use the symbolic oracle"
    )]
    BdClosedFormUndisplayed(usize),

    #[error("expansion budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("lattice condition fails for the given parameters")]
    LatticeConditionFailed,

    #[error("applied operator is not proportional to f^(s-1)u: residue in shift cell {0}")]
    ResidueNotProportional(String),

    #[error("affine factor extraction incomplete; residual of s-degree {0} remains: {1}")]
    FactorizationIncomplete(u32, String),

    #[error("weight-lattice linear system is inconsistent: {0}")]
    InconsistentWeightSystem(String),

    #[error("orbit model disagrees with the expected representative data: {0}")]
    OrbitModelMismatch(String),

    #[error("type BD with p = q = 0 is a stable grading; {0}")]
    StableBdUnsupported(&'static str),

    #[error("induced dimension {0} is odd at a delta-split label")]
    OddSplitDimension(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("oracle coefficient exceeded the checked 128-bit fast path; lower the budget")]
    ArithmeticOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
