//! Exact arithmetic on `Q_p` with explicit valuation and precision tracking.

mod literal;
mod number;
mod prime;

pub use literal::{Literal, LiteralError};
pub use number::{arith, ArithOp, PadicNumber, Valuation};
pub use prime::Prime;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("p = 2 is not supported; p must be an odd prime")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero has no unit decomposition")]
    ZeroDecompose,
    #[error("digit {digit} out of range for p = {prime}")]
    DigitOutOfRange { digit: u64, prime: u64 },
    #[error("all known digits cancelled; value is only known to be 0 mod p^{abs_precision}")]
    PrecisionExhausted { abs_precision: i64 },
}

/// Precision bookkeeping for a solver run: `requested_digits` are returned,
/// `requested_digits + working_margin` are carried internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionBudget {
    requested_digits: u32,
    working_margin: u32,
}

impl PrecisionBudget {
    pub fn new(requested_digits: u32, working_margin: u32) -> Option<Self> {
        (requested_digits >= 1).then_some(PrecisionBudget {
            requested_digits,
            working_margin,
        })
    }

    /// Default solver budget: margin `2s + 4` for derivative valuation `s`.
    pub fn for_lifting(requested_digits: u32, s: u32) -> Option<Self> {
        Self::new(requested_digits, 2 * s + 4)
    }

    pub fn requested(&self) -> u32 {
        self.requested_digits
    }

    pub fn margin(&self) -> u32 {
        self.working_margin
    }

    pub fn working(&self) -> u32 {
        self.requested_digits + self.working_margin
    }
}
