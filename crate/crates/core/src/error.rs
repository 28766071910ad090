use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the library.
///
/// Mathematical *verdicts* (a digit system failing the finite expansion
/// property, a CRT tuple not being integrally interpolable, a merge condition
/// failing) are not errors; they are reported through the return values of the
/// operations that compute them. Errors signal violated preconditions,
/// unparsable input, or exhausted computational budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,

    #[error("modulus must be monic of degree >= 1 with nonzero constant term")]
    BadModulus,

    #[error("polynomials are not coprime over the rationals")]
    NotCoprime,

    #[error("polynomial contents share a factor, so the ideal contains no monic polynomial")]
    SharedContent,

    #[error("digit set must be irredundant, found {0}")]
    NotIrredundant(String),

    #[error("factor does not divide the modulus")]
    FactorDoesNotDivide,

    #[error("digit index {0} out of range")]
    DigitIndexOutOfRange(usize),

    #[error("degree bound cap {0} exceeded while computing a strong Groebner basis")]
    DegreeBoundExceeded(usize),

    #[error("multiplier product formula requires coprime leading coefficients")]
    LeadingCoefficientsNotCoprime,

    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("quotient ring with {0} elements is too large to enumerate")]
    EnumerationTooLarge(BigInt),

    #[error("invalid simultaneous system: {0}")]
    InvalidSimSystem(String),

    #[error("search space of {0} polynomials exceeds the cap of {1}")]
    SearchSpaceExceeded(u64, u64),

    #[error("verdict is inconclusive: {0}")]
    Inconclusive(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
