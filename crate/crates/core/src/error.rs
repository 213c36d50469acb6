use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("term order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: String, found: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("exponent vector has length {found}, ring has {expected} variables")]
    ArityMismatch { expected: usize, found: usize },
    #[error("power must be at least 1, got {0}")]
    InvalidPower(u64),
    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfP { q: u64, p: u64 },
    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("ideal is not zero-dimensional (quotient has infinite length)")]
    NotZeroDimensional,
    #[error("Hilbert series has a pole of order {0} at t = 1")]
    PositivePoleOrder(usize),
    #[error("division by (1-t)^{d} left a nonzero remainder")]
    NotDivisible { d: usize },
    #[error("Tor over a ring with quotient relations is not supported; use the Koszul route")]
    QuotientRingUnsupported,
    #[error("Groebner computation reached degree {degree}, above the budget {budget}")]
    DegreeBudgetExceeded { degree: u64, budget: u64 },
    #[error("zero polynomial is not a valid generator")]
    ZeroGenerator,
    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::RingMismatch => "ring_mismatch",
            Error::OrderMismatch { .. } => "order_mismatch",
            Error::ExponentOverflow => "exponent_overflow",
            Error::InvalidRing(_) => "invalid_ring",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::InvalidPower(_) => "invalid_power",
            Error::NotPowerOfP { .. } => "not_power_of_p",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::NotZeroDimensional => "not_zero_dimensional",
            Error::PositivePoleOrder(_) => "positive_pole_order",
            Error::NotDivisible { .. } => "not_divisible",
            Error::QuotientRingUnsupported => "quotient_ring_unsupported",
            Error::DegreeBudgetExceeded { .. } => "degree_budget_exceeded",
            Error::ZeroGenerator => "zero_generator",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
