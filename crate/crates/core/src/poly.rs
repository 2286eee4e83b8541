//! Dense polynomials with `Z_p` coefficients.

use std::fmt;

use crate::padic::{PadicError, PadicNumber, Prime, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial has no coefficients")]
    Empty,
    #[error("coefficient {index} is not a p-adic integer (valuation {valuation})")]
    NotIntegral { index: usize, valuation: Valuation },
    #[error("leading coefficient is not 1")]
    NonMonic,
    #[error("monic polynomial must have degree at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// `c_0 + c_1 x + ... + c_n x^n`, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    prime: Prime,
    coeffs: Vec<PadicNumber>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<PadicNumber>) -> Result<Self, PolyError> {
        let prime = coeffs.first().ok_or(PolyError::Empty)?.prime();
        for (index, c) in coeffs.iter().enumerate() {
            if c.prime() != prime {
                return Err(PadicError::PrimeMismatch(prime.get(), c.prime().get()).into());
            }
            if !c.valuation().is_at_least(0) {
                return Err(PolyError::NotIntegral {
                    index,
                    valuation: c.valuation(),
                });
            }
        }
        Ok(Polynomial { prime, coeffs })
    }

    /// From machine-integer coefficients, ascending, each expanded to
    /// `rel_precision` digits.
    pub fn from_integers(
        coeffs: &[i64],
        prime: Prime,
        rel_precision: u32,
    ) -> Result<Self, PolyError> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| PadicNumber::from_integer(c, prime, rel_precision))
                .collect(),
        )
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        let mut acc = PadicNumber::zero(self.prime);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial {
                prime: self.prime,
                coeffs: vec![PadicNumber::zero(self.prime)],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(i as i64))
            .collect();
        Polynomial {
            prime: self.prime,
            coeffs,
        }
    }

    /// `-min v_p(c_j)` over the nonconstant coefficients: the exponent `lambda`
    /// in `|f(x) - f(y)|_p <= p^lambda |x - y|_p` on `Z_p`. Zero when there is
    /// no nonconstant term.
    pub fn lipschitz_exponent(&self) -> i64 {
        self.coeffs
            .iter()
            .skip(1)
            .filter_map(|c| c.valuation().lower_bound())
            .min()
            .map_or(0, |v| -v)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `P_k(x) = x^k + a^(1) x^(k-1) + ... + a^(k)`, with `Z_p` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPolynomial {
    prime: Prime,
    /// `a^(1) ..= a^(k)`.
    lower: Vec<PadicNumber>,
}

impl MonicPolynomial {
    /// From `a^(1) ..= a^(k)`.
    pub fn new(lower: Vec<PadicNumber>) -> Result<Self, PolyError> {
        if lower.is_empty() {
            return Err(PolyError::ZeroDegree);
        }
        // reuse the integrality and prime checks
        let checked = Polynomial::new(lower)?;
        Ok(MonicPolynomial {
            prime: checked.prime,
            lower: checked.coeffs,
        })
    }

    /// From descending coefficients including the leading `1`.
    pub fn from_descending(coeffs: Vec<PadicNumber>) -> Result<Self, PolyError> {
        let (lead, rest) = coeffs.split_first().ok_or(PolyError::Empty)?;
        let digits = lead.digits();
        let is_one = lead.valuation() == Valuation::Exact(0)
            && digits[0] == 1
            && digits[1..].iter().all(|&d| d == 0);
        if !is_one {
            return Err(PolyError::NonMonic);
        }
        Self::new(rest.to_vec())
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> u64 {
        self.lower.len() as u64
    }

    /// `a^(j)` for `1 <= j <= k`.
    pub fn coefficient(&self, j: usize) -> &PadicNumber {
        &self.lower[j - 1]
    }

    /// `a^(1) ..= a^(k-1)`.
    pub fn middle(&self) -> &[PadicNumber] {
        &self.lower[..self.lower.len() - 1]
    }

    /// `a^(k)`.
    pub fn constant(&self) -> &PadicNumber {
        self.lower.last().expect("degree >= 1")
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut coeffs: Vec<PadicNumber> = self.lower.iter().rev().cloned().collect();
        // the leading 1 is exact; give it more digits than any other term carries
        let digits = self
            .lower
            .iter()
            .filter_map(|c| c.abs_precision())
            .max()
            .unwrap_or(1)
            .max(1) as u32
            + 1;
        coeffs.push(PadicNumber::one(self.prime, digits));
        Polynomial {
            prime: self.prime,
            coeffs,
        }
    }

    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        // leading 1 is exact, so start from x instead of 1 * x
        let mut acc = x.clone();
        let last = self.lower.len() - 1;
        for (i, c) in self.lower.iter().enumerate() {
            acc = acc.add(c)?;
            if i < last {
                acc = acc.mul(x)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.lower.len();
        write!(f, "x^{k}")?;
        for (j, c) in self.lower.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let e = k - j - 1;
            match e {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})x")?,
                _ => write!(f, " + ({c})x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> Prime {
        Prime::new(5).unwrap()
    }

    #[test]
    fn horner_matches_integer_evaluation() {
        // x^2 + 5x - 6 at x = 3: 9 + 15 - 6 = 18
        let f = Polynomial::from_integers(&[-6, 5, 1], five(), 6).unwrap();
        let x = PadicNumber::from_integer(3, five(), 6);
        assert_eq!(
            f.eval(&x).unwrap(),
            PadicNumber::from_integer(18, five(), 6)
        );
        let df = f.derivative();
        assert_eq!(
            df.eval(&x).unwrap(),
            PadicNumber::from_integer(11, five(), 6)
        );
    }

    #[test]
    fn monic_eval_agrees_with_general_eval() {
        let prime = five();
        let m = MonicPolynomial::from_descending(vec![
            PadicNumber::one(prime, 6),
            PadicNumber::from_integer(125, prime, 6),
            PadicNumber::from_integer(-6, prime, 6),
        ])
        .unwrap();
        let x = PadicNumber::from_integer(7, prime, 6);
        assert_eq!(m.eval(&x).unwrap(), m.to_polynomial().eval(&x).unwrap());
        assert_eq!(m.degree(), 2);
        assert_eq!(m.constant(), &PadicNumber::from_integer(-6, prime, 6));
    }

    #[test]
    fn rejects_non_monic_and_non_integral() {
        let prime = five();
        let err = MonicPolynomial::from_descending(vec![
            PadicNumber::from_integer(2, prime, 4),
            PadicNumber::zero(prime),
            PadicNumber::from_integer(-2, prime, 4),
        ]);
        assert_eq!(err, Err(PolyError::NonMonic));
        let frac = PadicNumber::from_rational(1, 5, prime, 3).unwrap();
        assert!(matches!(
            MonicPolynomial::new(vec![frac, PadicNumber::one(prime, 3)]),
            Err(PolyError::NotIntegral { index: 0, .. })
        ));
    }

    #[test]
    fn lipschitz_exponent_from_coefficients() {
        let prime = five();
        assert_eq!(
            Polynomial::from_integers(&[3, 1], prime, 4)
                .unwrap()
                .lipschitz_exponent(),
            0
        );
        assert_eq!(
            Polynomial::from_integers(&[3, 25, 5], prime, 4)
                .unwrap()
                .lipschitz_exponent(),
            -1
        );
        assert_eq!(
            Polynomial::from_integers(&[3], prime, 4)
                .unwrap()
                .lipschitz_exponent(),
            0
        );
    }
}
