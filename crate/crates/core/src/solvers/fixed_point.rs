use std::fmt;

use num_integer::Integer;

use crate::padic::{PadicError, PadicNumber, Prime, Valuation};
use crate::poly::MonicPolynomial;
use crate::residue::decompose_k;

use super::{solve_polynomial, verify, SolveError};

/// A hypothesis of the fixed-point theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedPointFlag {
    BInEp,
    CInEp,
    DInEp,
    /// `d = 1 - b + c`
    DEqualsOneMinusBPlusC,
    /// `|b - 1|_p < |(c - 1)^2|_p`
    BCloserThanCSquared,
    /// `|(c - 1)^2|_p < |k^2|_p`
    CSquaredCloserThanKSquared,
}

impl FixedPointFlag {
    pub const ALL: [FixedPointFlag; 6] = [
        FixedPointFlag::BInEp,
        FixedPointFlag::CInEp,
        FixedPointFlag::DInEp,
        FixedPointFlag::DEqualsOneMinusBPlusC,
        FixedPointFlag::BCloserThanCSquared,
        FixedPointFlag::CSquaredCloserThanKSquared,
    ];
}

impl fmt::Display for FixedPointFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedPointFlag::BInEp => "b in E_p",
            FixedPointFlag::CInEp => "c in E_p",
            FixedPointFlag::DInEp => "d in E_p",
            FixedPointFlag::DEqualsOneMinusBPlusC => "d = 1 - b + c",
            FixedPointFlag::BCloserThanCSquared => "|b - 1|_p < |(c - 1)^2|_p",
            FixedPointFlag::CSquaredCloserThanKSquared => "|(c - 1)^2|_p < |k^2|_p",
        })
    }
}

/// `f(x) = ((b x - c) / (x - d))^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointProblem {
    b: PadicNumber,
    c: PadicNumber,
    d: PadicNumber,
    k: u64,
}

impl FixedPointProblem {
    /// Rejects `k = 0` and the constant map `c = b d`.
    pub fn new(b: PadicNumber, c: PadicNumber, d: PadicNumber, k: u64) -> Result<Self, SolveError> {
        let p = b.prime();
        for x in [&c, &d] {
            if x.prime() != p {
                return Err(PadicError::PrimeMismatch(p.get(), x.prime().get()).into());
            }
        }
        decompose_k(k, p)?;
        if c.sub(&b.mul(&d)?)?.is_indistinguishable_from_zero() {
            return Err(SolveError::DegenerateMap);
        }
        Ok(FixedPointProblem { b, c, d, k })
    }

    pub fn prime(&self) -> Prime {
        self.b.prime()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn b(&self) -> &PadicNumber {
        &self.b
    }

    pub fn c(&self) -> &PadicNumber {
        &self.c
    }

    pub fn d(&self) -> &PadicNumber {
        &self.d
    }

    fn minus_one(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        x.sub(&PadicNumber::one(self.prime(), x.rel_precision().max(1)))
    }

    /// Each hypothesis with whether it holds.
    pub fn hypotheses(&self) -> Result<Vec<(FixedPointFlag, bool)>, SolveError> {
        let s = decompose_k(self.k, self.prime())?.s as i64;
        let one = PadicNumber::one(
            self.prime(),
            self.b.rel_precision().max(self.c.rel_precision()) + 1,
        );
        let gap = one.sub(&self.b)?.add(&self.c)?.sub(&self.d)?;
        let vb = self.minus_one(&self.b)?.valuation();
        let t = self.minus_one(&self.c)?.valuation();
        let b_closer = match t {
            Valuation::Exact(t) => vb.exceeds(2 * t),
            Valuation::Infinite => false,
            Valuation::AtLeast(_) => {
                return Err(SolveError::InsufficientPrecision {
                    needed: 2 * s + 2,
                    known: t,
                })
            }
        };
        let flags = vec![
            (FixedPointFlag::BInEp, self.b.in_ep()),
            (FixedPointFlag::CInEp, self.c.in_ep()),
            (FixedPointFlag::DInEp, self.d.in_ep()),
            (
                FixedPointFlag::DEqualsOneMinusBPlusC,
                gap.is_indistinguishable_from_zero(),
            ),
            (FixedPointFlag::BCloserThanCSquared, b_closer),
            (FixedPointFlag::CSquaredCloserThanKSquared, t.exceeds(s)),
        ];
        Ok(flags)
    }

    pub fn eval_map(&self, x: &PadicNumber) -> Result<PadicNumber, SolveError> {
        let den = x.sub(&self.d)?;
        if den.is_indistinguishable_from_zero() {
            return Err(SolveError::InsufficientPrecision {
                needed: 0,
                known: den.valuation(),
            });
        }
        let num = self.b.mul(x)?.sub(&self.c)?;
        Ok(num.div(&den)?.pow(self.k))
    }

    /// Unit digits `b`, `c`, `d` should carry for [`fixed_points`] to reach
    /// `n_digits`, read off the current values.
    pub fn required_input_digits(&self, n_digits: u32) -> Option<u32> {
        let s = decompose_k(self.k, self.prime()).ok()?.s;
        let w = self.minus_one(&self.b).ok()?.valuation().exact()?;
        let t = self.minus_one(&self.c).ok()?.valuation().exact()?;
        Some(n_digits + 2 * (w as u32 + t as u32 + s) + 8)
    }
}

impl fmt::Display for FixedPointProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f(x) = ((({}) x - ({})) / (x - ({})))^{}",
            self.b, self.c, self.d, self.k
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    /// The fixed point.
    pub x: PadicNumber,
    /// `y = (b x - c) / (x - d)`, a root of `y^(k+1) - b y^k - d y + c`.
    pub y: PadicNumber,
    /// Leading digit of `y`.
    pub xi: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub problem: String,
    pub prime: Prime,
    pub k: u64,
    pub flags: Vec<(FixedPointFlag, bool)>,
    pub kappa_p: usize,
    /// `x = 1` first, then by `xi`.
    pub fixed_points: Vec<FixedPoint>,
}

const MAX_ATTEMPTS: u32 = 4;

/// All fixed points of `f_{b,c,d}`: `x = 1` and `x = y^k` for each root `y`
/// of `y^k - c - (b - 1)(y^(k-1) + ... + y)`.
///
/// The map expands strongly near its nontrivial fixed points, so each is
/// computed with extra digits until `|f(x) - x|_p <= p^(-n_digits)` checks
/// out on the returned value.
pub fn fixed_points(
    prob: &FixedPointProblem,
    n_digits: u32,
) -> Result<FixedPointReport, SolveError> {
    let p = prob.prime();
    let k = prob.k;
    let flags = prob.hypotheses()?;
    if let Some(&(flag, _)) = flags.iter().find(|(_, ok)| !ok) {
        return Err(SolveError::FixedPointHypothesis(flag));
    }
    let s = decompose_k(k, p)?.s;
    let b1 = prob.minus_one(&prob.b)?;
    let w = b1.valuation().exact().ok_or(SolveError::DegenerateMap)?;
    let t = prob
        .minus_one(&prob.c)?
        .valuation()
        .exact()
        .expect("hypotheses checked");
    let kappa = k.gcd(&(p.get() - 1)) as usize;

    let mut lower = vec![b1.neg(); k as usize - 1];
    lower.push(prob.c.neg());
    let eq = MonicPolynomial::new(lower)?;

    let mut extra = (w + t) as u32 + s + 2;
    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        match attempt(prob, &eq, n_digits, n_digits + extra) {
            Ok(points) => {
                if points.len() != kappa + 1 {
                    return Err(SolveError::VerificationFailed {
                        needed: kappa as i64 + 1,
                        found: Valuation::Exact(points.len() as i64),
                    });
                }
                return Ok(FixedPointReport {
                    problem: prob.to_string(),
                    prime: p,
                    k,
                    flags,
                    kappa_p: kappa,
                    fixed_points: points,
                });
            }
            Err(e @ SolveError::InsufficientPrecision { .. }) => {
                last_err = Some(e);
                extra *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

fn attempt(
    prob: &FixedPointProblem,
    eq: &MonicPolynomial,
    n_digits: u32,
    digits: u32,
) -> Result<Vec<FixedPoint>, SolveError> {
    let p = prob.prime();
    let one = PadicNumber::one(p, digits);
    let mut points = vec![FixedPoint {
        x: one.clone(),
        y: one,
        xi: 1,
    }];
    let report = solve_polynomial(eq, digits)?;
    for r in report.roots {
        points.push(FixedPoint {
            x: r.root.pow(prob.k),
            y: r.root,
            xi: r.xi,
        });
    }
    for pt in &points {
        assert!(pt.x.in_ep(), "fixed point {} outside E_p", pt.x);
        let fx = prob.eval_map(&pt.x)?;
        verify(fx.sub(&pt.x)?.valuation(), n_digits as i64)?;
    }
    Ok(points)
}
