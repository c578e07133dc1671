use thiserror::Error;

use crate::poly::Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// State of a Gröbner computation that ran out of budget.
#[derive(Clone, Debug)]
pub struct PartialBasis {
    pub basis: Vec<Poly>,
    pub pairs_processed: usize,
    pub pairs_pending: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("Gröbner budget exhausted: {reason} (processed {} pairs, basis size {})", .partial.pairs_processed, .partial.basis.len())]
    BudgetExhausted { reason: String, partial: Box<PartialBasis> },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid ring map: {0}")]
    InvalidMap(String),
    #[error("point is not on Spec B: {0}")]
    PointNotOnSpec(String),
    #[error("component {component} is not dominant over its source; annotate it with `reldim`")]
    NonDominant { component: usize },
    #[error("flatness cannot be checked automatically for this base ({0}); add `assume flat` for the map")]
    FlatnessUnavailable(String),
    #[error("algebra is not zero-dimensional (component {component} has dimension {dim})")]
    NotZeroDimensional { component: usize, dim: usize },
    #[error("invalid finite-dimensional data: {0}")]
    InvalidFd(String),
    #[error("chain space in degree {degree} exceeds the budget of {limit} (largest computed degree: {computed:?})")]
    ChainBudget { degree: usize, limit: usize, computed: Option<usize> },
}
