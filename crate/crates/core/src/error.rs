use thiserror::Error;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("elevation mismatch: {left} vs {right}")]
    ElevationMismatch { left: usize, right: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero has no finite value")]
    InfiniteValuation,
    #[error("division by a measure value that is not a monomial")]
    NonMonomialDivisor,
    #[error("exponent {exponent:?} is not divisible by {factor}")]
    IndivisibleExponent { exponent: Vec<i64>, factor: i64 },
    #[error(
        "inverse of element with valuation {valuation:?} has infinitely many terms below precision {prec:?}"
    )]
    NonTerminating { valuation: Vec<i64>, prec: Vec<i64> },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix shape mismatch")]
    ShapeMismatch,
}

/// Errors raised by the distinguished-set families and the set algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("distinguished set is not contained in the enclosing set")]
    NotContained,
    #[error("small shell is not contained in any big shell")]
    ShellNotContained,
    #[error("presentations describe different sets")]
    InputsNotEqual,
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("congruence subgroup index must be positive, got {0:?}")]
    NonPositiveIndex(Vec<i64>),
    #[error("representative has determinant different from 1")]
    DeterminantNotOne,
    #[error("enumeration of {candidates} candidates exceeds the guard of {guard}")]
    GuardExceeded { candidates: u128, guard: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("right translation by this element does not preserve left cosets")]
    NotNormalizing,
}
