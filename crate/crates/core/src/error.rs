use thiserror::Error;

use crate::goursat::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be a positive integer, got 0")]
    Zero { what: &'static str },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("not a Goursat tuple: {0}")]
    InvalidTuple(Violation),

    #[error("{what} = {requested} exceeds the configured budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("series bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("divisor series must have leading coefficient 1")]
    NonUnitLeading,

    #[error("zeta block with both axis exponents zero is not a finite series")]
    DegenerateBlock,

    #[error("local rule is not normalized: rule({p}, 0, 0) = {value}")]
    RuleNotNormalized { p: u64, value: u64 },

    #[error("least-squares fit needs at least 3 sample points, got {0}")]
    TooFewSamples(usize),

    #[error("sample points must be strictly ascending")]
    UnsortedSamples,

    /// Two routes that must agree produced different values. This is a defect,
    /// never an input problem.
    #[error("internal inconsistency in {context}: {left} != {right}")]
    Inconsistent {
        context: &'static str,
        left: i128,
        right: i128,
    },
}
