use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has {actual} entries, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("value {value} is out of range (must be < {bound})")]
    ValueOutOfRange { value: u32, bound: u32 },

    #[error("variable index {index} is out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("cannot identify variable x{0} with itself")]
    SameIndex(usize),

    #[error("expected arity {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("functions have different domain/codomain sizes")]
    DomainMismatch,

    #[error("arity gap is undefined for essential arity {ess} (needs at least 2)")]
    EssentialArityTooSmall { ess: usize },

    #[error("function is not Boolean (k = {k}, b = {b})")]
    NotBoolean { k: u32, b: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid spec: {0}")]
    SpecInvalid(String),

    #[error("gamma is not surjective onto the base domain")]
    GammaNotSurjective,

    #[error("phi is not injective")]
    PhiNotInjective,

    #[error("work size {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("variable x{0} is not essential")]
    NotTotallyEssential(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
