//! Brute-force ground truth over `Z / p^M`.
//!
//! Everything here is plain modular integer arithmetic so it shares no code
//! paths with the p-adic engine it is used to check. The only theory used is
//! the merge rule: two solutions mod `p^M` in the same ball are the same root
//! when they agree mod `p^(M - s)`, `s = v_p(F'(root))`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::padic::{PadicNumber, Prime};

/// At most this many residues are scanned per call.
pub const EVALUATION_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("p^{m} exceeds the evaluation budget of {budget}")]
    BudgetExceeded { m: u32, budget: u64 },
    #[error("M = {m} is too small; need M >= {required}")]
    ModulusTooSmall { m: u32, required: u32 },
    #[error("root is known only modulo p^{known}, need p^{needed}")]
    InsufficientPrecision { needed: u32, known: i64 },
    #[error("c = 1: the fixed-point congruence has no merge radius")]
    TrivialC,
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// A polynomial with integer coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^k - a`.
    pub fn monomial(k: u64, a: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); k as usize + 1];
        coeffs[0] = -a.into();
        coeffs[k as usize] += 1;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn reduced(&self, modulus: u64) -> Vec<u64> {
        let m = BigInt::from(modulus);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced below modulus"))
            .collect()
    }

    pub fn eval_big(&self, x: &BigUint, modulus: &BigUint) -> BigUint {
        let m = BigInt::from(modulus.clone());
        let x = BigInt::from(x.clone());
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &x + c).mod_floor(&m);
        }
        acc.to_biguint().expect("nonnegative")
    }
}

fn horner(coeffs: &[u64], x: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * x as u128 + c as u128) % modulus as u128;
    }
    acc as u64
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sums of terms `c`, `c*x^n`, `cx^n`, `x^n`, `x`, e.g. `x^3+125x-6`.
impl FromStr for IntPoly {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| OracleError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err("empty"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ if coeffs.is_empty() => (false, rest),
                _ => return Err(err("expected + or -")),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let (coeff, power) = match term.split_once('x') {
                None => (term, 0usize),
                Some((c, p)) => {
                    let power = match p {
                        "" => 1,
                        _ => p
                            .strip_prefix('^')
                            .and_then(|n| n.parse().ok())
                            .ok_or_else(|| err("bad exponent"))?,
                    };
                    (c.strip_suffix('*').unwrap_or(c), power)
                }
            };
            let mut value: BigInt = match coeff {
                "" if power > 0 => BigInt::one(),
                _ => coeff.parse().map_err(|_| err("bad coefficient"))?,
            };
            if negative {
                value = -value;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += value;
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Roots of `F` modulo `p^M`, merged into classes modulo `p^(M - s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub modulus_exponent: u32,
    pub class_exponent: u32,
    /// Ascending representatives in `[0, p^class_exponent)`.
    pub solution_classes: Vec<u64>,
    pub count: usize,
}

impl OracleCount {
    fn from_classes(m: u32, class_exponent: u32, classes: BTreeSet<u64>) -> Self {
        let solution_classes: Vec<u64> = classes.into_iter().collect();
        OracleCount {
            modulus_exponent: m,
            class_exponent,
            count: solution_classes.len(),
            solution_classes,
        }
    }
}

fn v_p(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn modulus(p: u64, m: u32) -> Result<u64, OracleError> {
    p.checked_pow(m)
        .filter(|&q| q <= EVALUATION_BUDGET)
        .ok_or(OracleError::BudgetExceeded {
            m,
            budget: EVALUATION_BUDGET,
        })
}

/// Scans units `x` in `[1, p^M)` for `F(x) = 0 (mod p^M)`, with `s = v_p(k)`.
pub fn brute_force_count(
    f: &IntPoly,
    p: Prime,
    k: u64,
    m: u32,
) -> Result<OracleCount, OracleError> {
    let pv = p.get();
    let s = v_p(k, pv);
    if m < 2 * s + 2 {
        return Err(OracleError::ModulusTooSmall {
            m,
            required: 2 * s + 2,
        });
    }
    let q = modulus(pv, m)?;
    let class_mod = pv.pow(m - s);
    let coeffs = f.reduced(q);
    let classes = (1..q)
        .filter(|x| x % pv != 0 && horner(&coeffs, *x, q) == 0)
        .map(|x| x % class_mod)
        .collect();
    Ok(OracleCount::from_classes(m, m - s, classes))
}

/// `x -> x^k mod p^M` over all units, for answering many `x^k = a` queries
/// with the same `(p, k, M)`. Same scan as [`brute_force_count`], done once.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    p: u64,
    m: u32,
    s: u32,
    modulus: u64,
    classes: HashMap<u64, BTreeSet<u64>>,
}

impl MonomialTable {
    pub fn new(p: Prime, k: u64, m: u32) -> Result<Self, OracleError> {
        let pv = p.get();
        let s = v_p(k, pv);
        if m < 2 * s + 2 {
            return Err(OracleError::ModulusTooSmall {
                m,
                required: 2 * s + 2,
            });
        }
        let q = modulus(pv, m)?;
        let class_mod = pv.pow(m - s);
        let mut classes: HashMap<u64, BTreeSet<u64>> = HashMap::new();
        for x in (1..q).filter(|x| x % pv != 0) {
            let mut acc: u128 = 1;
            let mut base = x as u128;
            let mut e = k;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % q as u128;
                }
                base = base * base % q as u128;
                e >>= 1;
            }
            classes.entry(acc as u64).or_default().insert(x % class_mod);
        }
        Ok(MonomialTable {
            p: pv,
            m,
            s,
            modulus: q,
            classes,
        })
    }

    /// Classes of `x^k = a (mod p^M)`.
    pub fn count(&self, a: &BigInt) -> OracleCount {
        let r = a
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("reduced");
        let classes = self.classes.get(&r).cloned().unwrap_or_default();
        debug_assert!(classes.iter().all(|c| c % self.p != 0));
        OracleCount::from_classes(self.m, self.m - self.s, classes)
    }
}

/// Whether `v_p(F(r)) >= e`, evaluating `F` on the residue of `r` mod `p^e`.
pub fn verify_root(f: &IntPoly, r: &PadicNumber, e: u32) -> Result<bool, OracleError> {
    let residue = r.residue_mod(e).ok_or(OracleError::InsufficientPrecision {
        needed: e,
        known: r.abs_precision().unwrap_or(i64::MAX),
    })?;
    let modulus = BigUint::from(r.prime().get()).pow(e);
    Ok(f.eval_big(&residue, &modulus).is_zero())
}

/// Fixed points of `x -> ((b x - c) / (x - d))^k`, counted through
/// `y = (b x - c) / (x - d)`.
///
/// A fixed point `x` gives `x = y^k` with `y^(k+1) - b y^k - d y + c = 0`,
/// and conversely; the scan runs over `y`. With `t = v_p(c - 1)` the
/// derivative has valuation `t` at every root, so classes merge mod
/// `p^(M - t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointCount {
    pub modulus_exponent: u32,
    pub class_exponent: u32,
    /// Ascending classes of `y` mod `p^class_exponent`.
    pub y_classes: Vec<u64>,
    /// `y^k` for each `y` class, ascending and deduplicated. Fixed points can
    /// agree to many digits, so this may be shorter than `y_classes`.
    pub x_classes: Vec<u64>,
    /// Classes whose `x` is not `1 mod p`.
    pub outside_ep: usize,
    pub count: usize,
}

pub fn brute_force_fixed_points(
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
    k: u64,
    p: Prime,
    m: u32,
) -> Result<FixedPointCount, OracleError> {
    let pv = p.get();
    let c1: BigInt = c - 1;
    if c1.is_zero() {
        return Err(OracleError::TrivialC);
    }
    let mut t = 0u32;
    let mut r = c1;
    let pb = BigInt::from(pv);
    while (&r % &pb).is_zero() {
        r /= &pb;
        t += 1;
    }
    if m < 2 * t + 2 {
        return Err(OracleError::ModulusTooSmall {
            m,
            required: 2 * t + 2,
        });
    }
    let q = modulus(pv, m)?;
    let class_mod = pv.pow(m - t);

    let mut h = vec![BigInt::zero(); k as usize + 2];
    h[k as usize + 1] += 1;
    h[k as usize] -= b;
    h[1] -= d;
    h[0] += c;
    let coeffs = IntPoly::new(h).reduced(q);

    let y_classes: BTreeSet<u64> = (1..q)
        .filter(|y| y % pv != 0 && horner(&coeffs, *y, q) == 0)
        .map(|y| y % class_mod)
        .collect();
    let mut x_classes = BTreeSet::new();
    let mut outside_ep = 0;
    for &y in &y_classes {
        let mut x: u128 = 1;
        for _ in 0..k {
            x = x * y as u128 % class_mod as u128;
        }
        if x % pv as u128 != 1 {
            outside_ep += 1;
        }
        x_classes.insert(x as u64);
    }
    Ok(FixedPointCount {
        modulus_exponent: m,
        class_exponent: m - t,
        count: y_classes.len(),
        y_classes: y_classes.into_iter().collect(),
        x_classes: x_classes.into_iter().collect(),
        outside_ep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn parses_expressions() {
        assert_eq!(
            "x^2-6".parse::<IntPoly>().unwrap(),
            IntPoly::from_i64(&[-6, 0, 1])
        );
        assert_eq!(
            "x^3 + 125x - 6".parse::<IntPoly>().unwrap(),
            IntPoly::from_i64(&[-6, 125, 0, 1])
        );
        assert_eq!(
            "-x+5*x^2".parse::<IntPoly>().unwrap(),
            IntPoly::from_i64(&[0, -1, 5])
        );
        assert_eq!("7".parse::<IntPoly>().unwrap(), IntPoly::from_i64(&[7]));
        assert!("x^".parse::<IntPoly>().is_err());
        assert!("2y".parse::<IntPoly>().is_err());
        assert_eq!(
            IntPoly::from_i64(&[-6, 125, 0, 1]).to_string(),
            "x^3 + 125x - 6"
        );
    }

    #[test]
    fn count_examples() {
        let r = brute_force_count(&IntPoly::monomial(2, 6), p(5), 2, 4).unwrap();
        assert_eq!(r.solution_classes, vec![109, 516]);
        let r = brute_force_count(&IntPoly::monomial(3, 10), p(3), 3, 5).unwrap();
        assert_eq!((r.count, r.class_exponent), (1, 4));
        assert_eq!(
            brute_force_count(&IntPoly::monomial(2, 2), p(5), 2, 4)
                .unwrap()
                .count,
            0
        );
        assert_eq!(
            brute_force_count(&IntPoly::monomial(3, 10), p(3), 3, 3),
            Err(OracleError::ModulusTooSmall { m: 3, required: 4 })
        );
        assert!(matches!(
            brute_force_count(&IntPoly::monomial(2, 6), p(101), 2, 5),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn table_agrees_with_scan() {
        let table = MonomialTable::new(p(3), 9, 8).unwrap();
        for a in [1i64, 10, 28, 55, 82, 244, 4, 2] {
            let scan = brute_force_count(&IntPoly::monomial(9, a), p(3), 9, 8).unwrap();
            assert_eq!(table.count(&BigInt::from(a)), scan, "a = {a}");
        }
    }

    #[test]
    fn verify_root_examples() {
        let five = p(5);
        let f = IntPoly::monomial(2, 6);
        let r = PadicNumber::from_digits(five, 0, &[1, 3, 0, 4]).unwrap();
        assert!(verify_root(&f, &r, 4).unwrap());
        assert!(!verify_root(&f, &PadicNumber::from_integer(1, five, 4), 2).unwrap());
        assert!(matches!(
            verify_root(&f, &r, 5),
            Err(OracleError::InsufficientPrecision { .. })
        ));
        let a = PadicNumber::from_integer(1234, five, 9);
        assert!(verify_root(&IntPoly::from_i64(&[-1234, 1]), &a, 9).unwrap());
    }

    #[test]
    fn fixed_point_examples() {
        let big = BigInt::from;
        let r = brute_force_fixed_points(&big(126), &big(6), &big(-119), 2, p(5), 6).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.outside_ep, 0);
        let r = brute_force_fixed_points(&big(244), &big(10), &big(-233), 3, p(3), 7).unwrap();
        assert_eq!(r.count, 2);
    }

    // k = 1: a Mobius map, whose fixed points solve x^2 - (b + d) x + c = 0
    #[test]
    fn mobius_cross_check() {
        let (b, c) = (1 + 7i64.pow(3), 8i64);
        let d = 1 - b + c;
        let r = brute_force_fixed_points(&b.into(), &c.into(), &d.into(), 1, p(7), 5).unwrap();
        let quad = brute_force_count(&IntPoly::from_i64(&[c, -(b + d), 1]), p(7), 1, 5).unwrap();
        assert_eq!(r.count, 2);
        // the quadratic is (x - 1)(x - c), with derivative valuation t = 1 at both roots
        let coarse: BTreeSet<u64> = quad
            .solution_classes
            .iter()
            .map(|x| x % 7u64.pow(4))
            .collect();
        assert_eq!(r.x_classes.len(), coarse.len());
    }
}
