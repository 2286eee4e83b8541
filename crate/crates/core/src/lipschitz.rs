//! Functions `f: Z_p -> Z_p` with a declared Lipschitz exponent.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::padic::{PadicError, PadicNumber, Prime, Valuation};
use crate::poly::Polynomial;

type Evaluator = dyn Fn(&PadicNumber) -> Result<PadicNumber, PadicError> + Send + Sync;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LipschitzError {
    #[error(
        "Lipschitz contract violated: v(x - y) = {distance} but v(f(x) - f(y)) = {image_distance}, \
         declared exponent {exponent}"
    )]
    ContractViolated {
        distance: i64,
        image_distance: i64,
        exponent: i64,
    },
    #[error("f does not map Z_p into Z_p: v(f(x)) = {0}")]
    NotIntegral(Valuation),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// An evaluable `f` with `|f(x) - f(y)|_p <= p^lambda |x - y|_p`.
///
/// The evaluator must honour precision: an input known modulo `p^A` yields an
/// output known modulo `p^(A - lambda)` or better. Any [`PadicNumber`]
/// arithmetic composition does this automatically.
#[derive(Clone)]
pub struct LipschitzFunction {
    prime: Prime,
    exponent: i64,
    evaluator: Arc<Evaluator>,
    polynomial: Option<Polynomial>,
}

const SPOT_CHECKS: usize = 48;
const SPOT_DIGITS: u32 = 12;

impl LipschitzFunction {
    /// Wraps an arbitrary evaluator. The contract is spot-checked on random
    /// pairs from a fixed seed; a detected violation rejects the function.
    pub fn new<F>(prime: Prime, exponent: i64, evaluator: F) -> Result<Self, LipschitzError>
    where
        F: Fn(&PadicNumber) -> Result<PadicNumber, PadicError> + Send + Sync + 'static,
    {
        let f = LipschitzFunction {
            prime,
            exponent,
            evaluator: Arc::new(evaluator),
            polynomial: None,
        };
        f.spot_check()?;
        Ok(f)
    }

    /// A polynomial with `Z_p` coefficients; the exponent is read off the
    /// coefficients.
    pub fn from_polynomial(poly: Polynomial) -> Self {
        let exponent = poly.lipschitz_exponent();
        let evaluating = poly.clone();
        LipschitzFunction {
            prime: poly.prime(),
            exponent,
            evaluator: Arc::new(move |x| evaluating.eval(x)),
            polynomial: Some(poly),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        self.polynomial.as_ref()
    }

    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        (self.evaluator)(x)
    }

    fn spot_check(&self) -> Result<(), LipschitzError> {
        let p = self.prime;
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_11b5);
        let random_int = |rng: &mut ChaCha8Rng, digits: u32| -> BigUint {
            let mut acc = BigUint::from(0u32);
            for _ in 0..digits {
                acc = acc * p.get() + rng.gen_range(0..p.get());
            }
            acc
        };
        for _ in 0..SPOT_CHECKS {
            let x = PadicNumber::from_residue(p, random_int(&mut rng, SPOT_DIGITS), SPOT_DIGITS);
            let j = rng.gen_range(0..SPOT_DIGITS / 2) as i64;
            let unit = rng.gen_range(1..p.get());
            let step = PadicNumber::from_integer(unit, p, SPOT_DIGITS).shift(j);
            let y = x.add(&step)?.truncate_abs(SPOT_DIGITS as i64);
            let fx = self.eval(&x)?;
            let fy = self.eval(&y)?;
            for v in [fx.valuation(), fy.valuation()] {
                if let Valuation::Exact(e) = v {
                    if e < 0 {
                        return Err(LipschitzError::NotIntegral(v));
                    }
                }
            }
            // only an exact valuation below the bound is a proven violation
            if let Valuation::Exact(w) = fx.sub(&fy)?.valuation() {
                if w < j - self.exponent {
                    return Err(LipschitzError::ContractViolated {
                        distance: j,
                        image_distance: w,
                        exponent: self.exponent,
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LipschitzFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipschitzFunction")
            .field("prime", &self.prime)
            .field("exponent", &self.exponent)
            .field("polynomial", &self.polynomial)
            .finish_non_exhaustive()
    }
}
