use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weights must be positive, got ({0}, {1}, {2})")]
    NonPositiveWeight(u64, u64, u64),

    #[error("weights are not pairwise coprime: gcd({first},{second})={gcd}")]
    NotCoprime {
        first: &'static str,
        second: &'static str,
        gcd: u64,
    },

    #[error("frobenius number undefined for ({0}, {1}): {2}")]
    NoFrobeniusNumber(u64, u64, &'static str),

    #[error("polynomials live in different rings: [{0}] vs [{1}]")]
    RingMismatch(String, String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not weighted-homogeneous")]
    Inhomogeneous,

    #[error("the zero polynomial has no multiplicity")]
    ZeroPolynomial,

    #[error("empty slice: no nonzero form of degree {degree} with multiplicity >= {mu}")]
    EmptySlice { degree: u64, mu: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("resource budget exhausted after {steps} steps ({context})")]
    BudgetExhausted { steps: u64, context: &'static str },
}

impl Error {
    /// True for errors caused by hitting a computation budget rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}
