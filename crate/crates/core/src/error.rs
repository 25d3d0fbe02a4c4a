use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{f} does not fit in 32 bits")]
    OrderTooLarge { p: u64, f: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid element coordinates: {0}")]
    InvalidElement(String),
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{r} does not divide {f}")]
    NotADivisor { r: u32, f: u32 },
    #[error("element is not in the subfield of order {p}^{degree}")]
    NotInSubfield { p: u32, degree: u32 },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("budget exceeded: {what} is {actual}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: u128,
        limit: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used for the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ZeroDegree => "zero_degree",
            Error::OrderTooLarge { .. } => "order_too_large",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::InvalidElement(_) => "invalid_element",
            Error::SpecMismatch => "spec_mismatch",
            Error::ZeroInverse => "zero_inverse",
            Error::ZeroDenominator => "zero_denominator",
            Error::NotADivisor { .. } => "not_a_divisor",
            Error::NotInSubfield { .. } => "not_in_subfield",
            Error::ZeroConstantTerm => "zero_constant_term",
            Error::ZeroDivisor => "zero_divisor",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Precondition(_) => "precondition",
            Error::TheoremViolation(_) => "theorem_violation",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
