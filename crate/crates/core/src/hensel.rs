//! Root lifting: classical Hensel/Newton for polynomials, the Newton seed
//! iteration for `x^k = a`, and the digit-by-digit lift for perturbed
//! monomials `F(x) = x^k - a + eps f(x)`.
//!
//! None of the engines trusts its recurrence: every iterate's residual is
//! re-evaluated and the certified valuation is what drives termination.

use num_bigint::BigUint;

use crate::lipschitz::LipschitzFunction;
use crate::padic::{PadicError, PadicNumber, Prime, Valuation};
use crate::poly::Polynomial;
use crate::residue::{decompose_k, pow_mod, KDecomposition, ResidueError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// `v(F(x*)) >= 2i + 1`
    Residual { required: i64, found: Valuation },
    /// `v(F'(x*)) = i`
    Derivative { required: i64, found: Valuation },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HenselError {
    #[error("Hensel hypothesis violated: {0:?}")]
    HypothesisViolated(Hypothesis),
    #[error("a is not a_0^(p^s) + o[p^s]: v(a - a_0^(p^s)) = {found}, need > {s}")]
    ConditionIIFailed { s: u32, found: Valuation },
    #[error("{xi} is not in Sol_p(x^k - a)")]
    NotInSolP { xi: u64 },
    #[error("expected a p-adic unit, got valuation {0}")]
    NotAUnit(Valuation),
    #[error("seed residual v(F(x)) = {found} does not exceed 2s = {bar}")]
    SeedTooCoarse { bar: i64, found: Valuation },
    #[error("lifting stalled at step {step}: residual {found}, expected at least {expected}")]
    StalledStep {
        step: u32,
        expected: i64,
        found: Valuation,
    },
    #[error("iterate left the ball B_1({xi})")]
    BallEscape { xi: u64 },
    #[error(
        "inputs are not known precisely enough: need residual >= {needed}, known only {known}"
    )]
    InsufficientPrecision { needed: i64, known: Valuation },
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// An approximate root with a verified residual: `v(F(seed)) > certified_modulus_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    pub seed: PadicNumber,
    pub certified_modulus_exponent: i64,
    /// `v_p` of the derivative at the seed (`s` for `x^k` with `k = m p^s`).
    pub derivative_valuation: u32,
}

/// `F(x) = x^k - a + eps f(x)`. With `perturbation == None` this is the pure
/// monomial `x^k - a`.
#[derive(Clone, Debug)]
pub struct PerturbedMonomial {
    k: u64,
    decomposition: KDecomposition,
    a: PadicNumber,
    perturbation: Option<(PadicNumber, LipschitzFunction)>,
}

impl PerturbedMonomial {
    pub fn monomial(k: u64, a: PadicNumber) -> Result<Self, HenselError> {
        let decomposition = decompose_k(k, a.prime())?;
        Ok(PerturbedMonomial {
            k,
            decomposition,
            a,
            perturbation: None,
        })
    }

    pub fn perturbed(
        k: u64,
        a: PadicNumber,
        epsilon: PadicNumber,
        f: LipschitzFunction,
    ) -> Result<Self, HenselError> {
        let mut out = Self::monomial(k, a)?;
        if epsilon.prime() != out.prime() {
            return Err(PadicError::PrimeMismatch(out.prime().get(), epsilon.prime().get()).into());
        }
        if !epsilon.is_exact_zero() {
            out.perturbation = Some((epsilon, f));
        }
        Ok(out)
    }

    pub fn prime(&self) -> Prime {
        self.a.prime()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn a(&self) -> &PadicNumber {
        &self.a
    }

    pub fn decomposition(&self) -> KDecomposition {
        self.decomposition
    }

    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        let mono = x.pow(self.k).sub(&self.a)?;
        match &self.perturbation {
            None => Ok(mono),
            Some((eps, f)) => mono.add(&eps.mul(&f.eval(x)?)?),
        }
    }
}

fn certify(v: Valuation, needed: i64) -> Result<bool, HenselError> {
    match v {
        Valuation::AtLeast(a) if a < needed => {
            Err(HenselError::InsufficientPrecision { needed, known: v })
        }
        _ => Ok(v.is_at_least(needed)),
    }
}

/// Newton's method from `x_star` for a polynomial with `v(F(x*)) >= 2i + 1`
/// and `v(F'(x*)) = i`. Returns the root modulo `p^n_digits`; it agrees with
/// `x_star` modulo `p^(i+1)`.
pub fn classical_hensel(
    f: &Polynomial,
    x_star: &PadicNumber,
    i: u32,
    n_digits: u32,
) -> Result<PadicNumber, HenselError> {
    let i = i as i64;
    let n = n_digits as i64;
    let working = n + 2 * i + 2;
    let df = f.derivative();
    let mut x = x_star.pad_to_absolute(working);

    let fx = f.eval(&x)?;
    if !fx.valuation().is_at_least(2 * i + 1) {
        return Err(HenselError::HypothesisViolated(Hypothesis::Residual {
            required: 2 * i + 1,
            found: fx.valuation(),
        }));
    }
    let dfx = df.eval(&x)?;
    if dfx.valuation() != Valuation::Exact(i) {
        return Err(HenselError::HypothesisViolated(Hypothesis::Derivative {
            required: i,
            found: dfx.valuation(),
        }));
    }

    // |x - root| = |F(x)| / |F'(x)|, so v(F(x)) >= n + i pins n digits
    let target = n + i;
    let mut residual = fx;
    let mut last = residual.valuation();
    for step in 0..(working as u32 + 4) {
        if certify(residual.valuation(), target)? {
            let root = x.truncate_abs(n);
            if !root.distance_valuation(x_star)?.is_at_least(i + 1) {
                return Err(HenselError::StalledStep {
                    step,
                    expected: i + 1,
                    found: root.distance_valuation(x_star)?,
                });
            }
            return Ok(root);
        }
        let deriv = df.eval(&x)?;
        if deriv.valuation() != Valuation::Exact(i) {
            return Err(HenselError::StalledStep {
                step,
                expected: i,
                found: deriv.valuation(),
            });
        }
        let correction = residual.div(&deriv)?;
        x = x
            .sub(&correction)?
            .truncate_abs(working)
            .pad_to_absolute(working);
        residual = f.eval(&x)?;
        let now = residual.valuation();
        if let (Some(before), Some(after)) = (last.exact(), now.exact()) {
            if after <= before {
                return Err(HenselError::StalledStep {
                    step,
                    expected: before + 1,
                    found: now,
                });
            }
        }
        last = now;
    }
    Err(HenselError::StalledStep {
        step: working as u32 + 4,
        expected: target,
        found: residual.valuation(),
    })
}

/// `v(a - a_0^(p^s))`, the quantity in condition (ii).
pub fn condition_ii_valuation(a: &PadicNumber, s: u32) -> Result<Valuation, HenselError> {
    let p = a.prime();
    let a0 = a
        .leading_digit()
        .ok_or(HenselError::NotAUnit(a.valuation()))?;
    let exponent = BigUint::from(p.get()).pow(s);
    let teich = PadicNumber::from_integer(a0, p, s + 1).pow_big(&exponent);
    Ok(a.truncate_abs(s as i64 + 1).sub(&teich)?.valuation())
}

/// Whether `a = a_0^(p^s) + o[p^s]`, i.e. `a = a_0^(p^s) mod p^(s+1)`.
pub fn condition_ii_holds(a: &PadicNumber, s: u32) -> Result<bool, HenselError> {
    let v = condition_ii_valuation(a, s)?;
    certify(v, s as i64 + 1)
}

/// Iterates `x <- x + (a - x^k) / (k x^(k-1))` from `x = xi` until
/// `x^k - a = o[k^2]`, i.e. `v(x^k - a) > 2s`.
///
/// Division by `k` strips `p^s` explicitly and then divides by the unit
/// `m x^(k-1)`. Iterates are kept as exact finite expansions at `working`
/// digits.
pub fn newton_seed(
    a: &PadicNumber,
    k: u64,
    xi: u64,
    working: u32,
) -> Result<LiftWitness, HenselError> {
    let p = a.prime();
    if a.valuation() != Valuation::Exact(0) {
        return Err(HenselError::NotAUnit(a.valuation()));
    }
    let KDecomposition { m, s, .. } = decompose_k(k, p)?;
    let a0 = a.leading_digit().expect("unit");
    if xi == 0 || xi >= p.get() || pow_mod(xi, k, p.get()) != a0 {
        return Err(HenselError::NotInSolP { xi });
    }
    let found = condition_ii_valuation(a, s)?;
    if !certify(found, s as i64 + 1)? {
        return Err(HenselError::ConditionIIFailed { s, found });
    }

    let w = working as i64;
    let bar = 2 * s as i64;
    let m_unit = PadicNumber::from_integer(m, p, working);
    let mut x = PadicNumber::from_integer(xi, p, working);
    let mut previous: Option<i64> = None;
    for step in 0..(working + 2) {
        let residual = x.pow(k).sub(a)?;
        let v = residual.valuation();
        if certify(v, bar + 1)? {
            return Ok(LiftWitness {
                seed: x,
                certified_modulus_exponent: v.lower_bound().map_or(w, |b| b - 1),
                derivative_valuation: s,
            });
        }
        let now = v.exact().expect("certify handles bounds");
        // strict decrease: x_(n)^k - a = o[x_(n-1)^k - a]
        if previous.is_some_and(|before| now <= before) || now <= s as i64 {
            return Err(HenselError::StalledStep {
                step,
                expected: previous.map_or(s as i64 + 1, |b| b + 1),
                found: v,
            });
        }
        previous = Some(now);
        let denom = m_unit.mul(&x.pow(k - 1))?;
        let delta = a.sub(&x.pow(k))?.shift(-(s as i64)).div(&denom)?;
        x = x.add(&delta)?.truncate_abs(w).pad_to_absolute(w);
        if x.leading_digit() != Some(xi) {
            return Err(HenselError::BallEscape { xi });
        }
    }
    Err(HenselError::StalledStep {
        step: working + 2,
        expected: bar + 1,
        found: x.pow(k).sub(a)?.valuation(),
    })
}

/// One digit-lift step, for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftStep {
    pub n: u32,
    pub alpha: u64,
    /// `v(F(x_(n+1)))` re-evaluated after the step.
    pub residual: Valuation,
}

/// Digit-by-digit lift `x_(n+1) = x_(n) + alpha_n p^(s+n)`, with `alpha_n` the
/// unique digit making `F(x_(n)) + k alpha_n p^(s+n) x_(n)^(k-1) = o[p^(2s+n)]`.
///
/// Requires `F(seed) = o[p^(2s)]`. Returns the root modulo `p^n_digits`.
pub fn digit_lift(
    f: &PerturbedMonomial,
    seed: &LiftWitness,
    n_digits: u32,
) -> Result<PadicNumber, HenselError> {
    digit_lift_traced(f, seed, n_digits).map(|(root, _)| root)
}

pub fn digit_lift_traced(
    f: &PerturbedMonomial,
    seed: &LiftWitness,
    n_digits: u32,
) -> Result<(PadicNumber, Vec<LiftStep>), HenselError> {
    let p = f.prime();
    let pv = p.get();
    let KDecomposition { k, m, s } = f.decomposition();
    let s64 = s as i64;
    let working = n_digits as i64 + 2 * s64 + 4;
    let target = n_digits as i64 + s64;

    let mut x = seed.seed.pad_to_absolute(working);
    let xi = x
        .leading_digit()
        .filter(|_| x.valuation() == Valuation::Exact(0))
        .ok_or(HenselError::NotAUnit(x.valuation()))?;
    let mut residual = f.eval(&x)?;
    if !certify(residual.valuation(), 2 * s64 + 1)? {
        return Err(HenselError::SeedTooCoarse {
            bar: 2 * s64,
            found: residual.valuation(),
        });
    }

    // (k / p^s) x^(k-1) = m xi^(k-1) mod p, a unit
    let slope = (m % pv) as u128 * pow_mod(xi, k - 1, pv) as u128 % pv as u128;
    let slope_inv = pow_mod(slope as u64, pv - 2, pv);

    let mut trace = Vec::new();
    let mut n: i64 = 1;
    loop {
        let v = residual.valuation();
        if certify(v, target)? {
            return Ok((x.truncate_abs(n_digits as i64), trace));
        }
        let exact = v.exact().expect("certify handles bounds");
        let e = 2 * s64 + n;
        if exact < e {
            return Err(HenselError::StalledStep {
                step: n as u32,
                expected: e,
                found: v,
            });
        }
        // alpha_n = 0 for every step whose residual already clears the bar
        n = exact - 2 * s64;
        let e = exact;
        let leading = residual.leading_digit().expect("exact valuation");
        let alpha = (pv - leading) % pv * slope_inv % pv;
        let bump = PadicNumber::from_integer(alpha, p, working as u32).shift(s64 + n);
        x = x.add(&bump)?.truncate_abs(working).pad_to_absolute(working);
        if x.leading_digit() != Some(xi) {
            return Err(HenselError::BallEscape { xi });
        }
        residual = f.eval(&x)?;
        let after = residual.valuation();
        trace.push(LiftStep {
            n: n as u32,
            alpha,
            residual: after,
        });
        if !certify(after, e + 1)? {
            return Err(HenselError::StalledStep {
                step: n as u32,
                expected: e + 1,
                found: after,
            });
        }
        n += 1;
        if n > working + 2 {
            return Err(HenselError::StalledStep {
                step: n as u32,
                expected: target,
                found: after,
            });
        }
    }
}
