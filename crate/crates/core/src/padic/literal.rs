use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PadicError, PadicNumber, Prime};

/// A textual p-adic value before a prime and precision are chosen.
///
/// Accepted forms: a signed integer (`-6`), a rational (`1/3`), or the
/// canonical digit form `d0,d1,...,d_{N-1}@v` (little-endian digits, `v` the
/// valuation). Integers and rationals can be expanded to any precision; the
/// digit form carries exactly the digits given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Integer(BigInt),
    Rational { num: BigInt, den: BigInt },
    Digits { digits: Vec<u64>, valuation: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse p-adic literal `{input}`: {reason}")]
pub struct LiteralError {
    pub input: String,
    pub reason: String,
}

impl Literal {
    /// Expands the literal over `prime` with `rel_precision` unit digits.
    /// Digit-form literals keep their own digit count.
    pub fn to_padic(&self, prime: Prime, rel_precision: u32) -> Result<PadicNumber, PadicError> {
        match self {
            Literal::Integer(n) => Ok(PadicNumber::from_integer(n.clone(), prime, rel_precision)),
            Literal::Rational { num, den } => {
                PadicNumber::from_rational(num.clone(), den.clone(), prime, rel_precision)
            }
            Literal::Digits { digits, valuation } => {
                PadicNumber::from_digits(prime, *valuation, digits)
            }
        }
    }

    /// The integer value, when the literal is an integer.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Literal::Integer(n) => Some(n),
            _ => None,
        }
    }
}

impl FromStr for Literal {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LiteralError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty"));
        }
        if let Some((digits, v)) = t.split_once('@') {
            let valuation: i64 = v.trim().parse().map_err(|_| err("bad valuation"))?;
            let digits = digits
                .split(',')
                .map(|d| d.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err("digits must be nonnegative integers"))?;
            if digits.iter().all(|&d| d == 0) {
                return Err(err(
                    "digit form needs a nonzero digit; write 0 for exact zero",
                ));
            }
            return Ok(Literal::Digits { digits, valuation });
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
            let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Literal::Rational { num, den });
        }
        let n: BigInt = t
            .parse()
            .map_err(|_| err("expected integer, num/den, or d0,d1,...@v"))?;
        Ok(Literal::Integer(n))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Integer(n) => write!(f, "{n}"),
            Literal::Rational { num, den } => write!(f, "{num}/{den}"),
            Literal::Digits { digits, valuation } => {
                let body: Vec<String> = digits.iter().map(u64::to_string).collect();
                write!(f, "{}@{}", body.join(","), valuation)
            }
        }
    }
}
