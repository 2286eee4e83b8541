use std::cmp::{max, min, Ordering};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{PadicError, Prime};

/// A lower bound on, or the exact value of, a p-adic valuation.
///
/// This is how `O[x]` / `o[x]` claims are expressed: `x = O[p^e]` is
/// `Exact(e)`, `x = o[p^e]` is any bound certifying `> e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    /// The value is nonzero and this is its valuation.
    Exact(i64),
    /// Every known digit cancelled: the value is `0 mod p^n`, nothing more.
    AtLeast(i64),
    /// Exact zero.
    Infinite,
}

impl Valuation {
    /// Whether `v >= e` is certified.
    pub fn is_at_least(self, e: i64) -> bool {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v >= e,
            Valuation::Infinite => true,
        }
    }

    /// Whether `v > e` is certified (the `o[p^e]` relation).
    pub fn exceeds(self, e: i64) -> bool {
        self.is_at_least(e + 1)
    }

    /// Largest `e` such that `v >= e` is certified; `None` for exact zero.
    pub fn lower_bound(self) -> Option<i64> {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            Valuation::Exact(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    /// `p^valuation * unit`, with `unit` known modulo `p^rel_precision` and
    /// coprime to `p`. `rel_precision == 0` leaves only `O(p^valuation)`.
    Approx {
        valuation: i64,
        unit: BigUint,
        rel_precision: u32,
    },
}

/// An element of `Q_p` with capped relative precision.
///
/// A nonzero value is `p^v (d_0 + d_1 p + ... + d_{N-1} p^{N-1}) + O(p^{v+N})`
/// with `d_0 != 0`. Exact zero is a separate sentinel with infinite valuation.
/// Arithmetic may also produce a value with no known digits (`O(p^A)`), which
/// is how total cancellation is reported by the non-checking operations; see
/// [`arith`] for the checking entry point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: Prime,
    repr: Repr,
}

pub(crate) fn prime_power(p: Prime, e: u32) -> BigUint {
    BigUint::from(p.get()).pow(e)
}

fn strip_p(p: Prime, mut n: BigUint) -> (BigUint, u32) {
    let pb = BigUint::from(p.get());
    let mut t = 0;
    if let Some(small) = n.to_u64() {
        let mut small = small;
        while small % p.get() == 0 {
            small /= p.get();
            t += 1;
        }
        return (BigUint::from(small), t);
    }
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (n, t);
        }
        n = q;
        t += 1;
    }
}

impl PadicNumber {
    pub fn zero(prime: Prime) -> Self {
        PadicNumber {
            prime,
            repr: Repr::Zero,
        }
    }

    pub fn one(prime: Prime, rel_precision: u32) -> Self {
        Self::from_integer(1, prime, rel_precision)
    }

    /// A value with no known digits: `0 mod p^abs_precision`.
    pub fn bounded_zero(prime: Prime, abs_precision: i64) -> Self {
        PadicNumber {
            prime,
            repr: Repr::Approx {
                valuation: abs_precision,
                unit: BigUint::zero(),
                rel_precision: 0,
            },
        }
    }

    /// Builds `p^valuation * residue` where `residue` is known modulo
    /// `p^width`; factors of `p` in `residue` are moved into the valuation.
    fn normalize(prime: Prime, valuation: i64, residue: BigUint, width: u32) -> Self {
        if width == 0 || residue.is_zero() {
            return Self::bounded_zero(prime, valuation + width as i64);
        }
        let (unit, t) = strip_p(prime, residue);
        PadicNumber {
            prime,
            repr: Repr::Approx {
                valuation: valuation + t as i64,
                unit,
                rel_precision: width - t,
            },
        }
    }

    /// Canonical expansion of an integer with `rel_precision` unit digits.
    pub fn from_integer(n: impl Into<BigInt>, prime: Prime, rel_precision: u32) -> Self {
        let n: BigInt = n.into();
        if n.is_zero() {
            return Self::zero(prime);
        }
        let (unit, v) = split_bigint(prime, &n);
        let modulus = prime_power(prime, rel_precision);
        let residue = reduce_signed(&unit, &modulus);
        Self::normalize(prime, v as i64, residue, rel_precision)
    }

    /// `num/den` expanded with `rel_precision` unit digits.
    pub fn from_rational(
        num: impl Into<BigInt>,
        den: impl Into<BigInt>,
        prime: Prime,
        rel_precision: u32,
    ) -> Result<Self, PadicError> {
        let num: BigInt = num.into();
        let den: BigInt = den.into();
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(prime));
        }
        let (num_unit, vn) = split_bigint(prime, &num);
        let (den_unit, vd) = split_bigint(prime, &den);
        let modulus = prime_power(prime, rel_precision);
        let n = reduce_signed(&num_unit, &modulus);
        let d = reduce_signed(&den_unit, &modulus);
        let unit = if rel_precision == 0 {
            BigUint::zero()
        } else {
            let inv = d.modinv(&modulus).ok_or(PadicError::ZeroInverse)?;
            (n * inv) % &modulus
        };
        Ok(Self::normalize(
            prime,
            vn as i64 - vd as i64,
            unit,
            rel_precision,
        ))
    }

    /// Builds `p^valuation (d_0 + d_1 p + ...)` from little-endian digits.
    /// Leading zero digits are absorbed into the valuation.
    pub fn from_digits(prime: Prime, valuation: i64, digits: &[u64]) -> Result<Self, PadicError> {
        let p = prime.get();
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(PadicError::DigitOutOfRange { digit: d, prime: p });
        }
        let mut residue = BigUint::zero();
        for &d in digits.iter().rev() {
            residue = residue * p + d;
        }
        Ok(Self::normalize(
            prime,
            valuation,
            residue,
            digits.len() as u32,
        ))
    }

    /// Interprets the nonnegative integer `residue` as a `p`-adic integer known
    /// modulo `p^abs_precision`.
    pub fn from_residue(prime: Prime, residue: BigUint, abs_precision: u32) -> Self {
        let modulus = prime_power(prime, abs_precision);
        Self::normalize(prime, 0, residue % modulus, abs_precision)
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// True when no digit is known (exact zero or `O(p^A)`).
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        match &self.repr {
            Repr::Zero => true,
            Repr::Approx { rel_precision, .. } => *rel_precision == 0,
        }
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinite,
            Repr::Approx {
                valuation,
                rel_precision: 0,
                ..
            } => Valuation::AtLeast(*valuation),
            Repr::Approx { valuation, .. } => Valuation::Exact(*valuation),
        }
    }

    /// Number of known unit digits; zero for exact zero and `O(p^A)`.
    pub fn rel_precision(&self) -> u32 {
        match &self.repr {
            Repr::Zero => 0,
            Repr::Approx { rel_precision, .. } => *rel_precision,
        }
    }

    /// `A` such that the value is known modulo `p^A`; `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx {
                valuation,
                rel_precision,
                ..
            } => Some(valuation + *rel_precision as i64),
        }
    }

    /// Little-endian unit digits `d_0 .. d_{N-1}`.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zero => Vec::new(),
            Repr::Approx {
                unit,
                rel_precision,
                ..
            } => to_digits(self.prime, unit, *rel_precision),
        }
    }

    pub fn leading_digit(&self) -> Option<u64> {
        match &self.repr {
            Repr::Approx {
                unit,
                rel_precision,
                ..
            } if *rel_precision > 0 => {
                let p = BigUint::from(self.prime.get());
                (unit % p).to_u64()
            }
            _ => None,
        }
    }

    /// The unit part as an integer in `[0, p^N)`.
    pub fn unit_residue(&self) -> BigUint {
        match &self.repr {
            Repr::Approx { unit, .. } => unit.clone(),
            Repr::Zero => BigUint::zero(),
        }
    }

    /// For a `p`-adic integer known modulo `p^e`, its residue in `[0, p^e)`.
    pub fn residue_mod(&self, e: u32) -> Option<BigUint> {
        match &self.repr {
            Repr::Zero => Some(BigUint::zero()),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => {
                if *valuation < 0 || valuation + (*rel_precision as i64) < e as i64 {
                    return None;
                }
                if *valuation >= e as i64 {
                    return Some(BigUint::zero());
                }
                let shifted = unit * prime_power(self.prime, *valuation as u32);
                Some(shifted % prime_power(self.prime, e))
            }
        }
    }

    fn check_prime(&self, other: &Self) -> Result<(), PadicError> {
        if self.prime != other.prime {
            return Err(PadicError::PrimeMismatch(
                self.prime.get(),
                other.prime.get(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        let (
            Repr::Approx {
                valuation: vx,
                unit: ux,
                rel_precision: nx,
            },
            Repr::Approx {
                valuation: vy,
                unit: uy,
                rel_precision: ny,
            },
        ) = (&self.repr, &other.repr)
        else {
            return Ok(if self.is_exact_zero() {
                other.clone()
            } else {
                self.clone()
            });
        };
        let abs = min(vx + *nx as i64, vy + *ny as i64);
        let v = min(*vx, *vy);
        let width = (abs - v) as u32;
        if width == 0 {
            return Ok(Self::bounded_zero(self.prime, abs));
        }
        let modulus = prime_power(self.prime, width);
        let lift = |u: &BigUint, vu: i64| -> BigUint {
            let shift = (vu - v) as u32;
            if shift >= width {
                BigUint::zero()
            } else if shift == 0 {
                u % &modulus
            } else {
                (u * prime_power(self.prime, shift)) % &modulus
            }
        };
        let sum = (lift(ux, *vx) + lift(uy, *vy)) % &modulus;
        Ok(Self::normalize(self.prime, v, sum, width))
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => {
                if *rel_precision == 0 {
                    return self.clone();
                }
                let modulus = prime_power(self.prime, *rel_precision);
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Approx {
                        valuation: *valuation,
                        unit: modulus - unit,
                        rel_precision: *rel_precision,
                    },
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        let (
            Repr::Approx {
                valuation: vx,
                unit: ux,
                rel_precision: nx,
            },
            Repr::Approx {
                valuation: vy,
                unit: uy,
                rel_precision: ny,
            },
        ) = (&self.repr, &other.repr)
        else {
            return Ok(Self::zero(self.prime));
        };
        let n = min(*nx, *ny);
        let v = vx + vy;
        if n == 0 {
            return Ok(Self::bounded_zero(self.prime, v));
        }
        let modulus = prime_power(self.prime, n);
        let unit = (ux * uy) % modulus;
        Ok(PadicNumber {
            prime: self.prime,
            repr: Repr::Approx {
                valuation: v,
                unit,
                rel_precision: n,
            },
        })
    }

    /// Multiplication by a machine integer, exact in the integer.
    pub fn scale(&self, n: i64) -> Self {
        let factor = Self::from_integer(n, self.prime, max(self.rel_precision(), 1));
        if factor.is_exact_zero() {
            return Self::zero(self.prime);
        }
        self.mul(&factor).expect("same prime")
    }

    /// `x^k` by modular exponentiation of the unit part; relative precision is
    /// preserved and the valuation scales by `k`.
    pub fn pow(&self, k: u64) -> Self {
        self.pow_big(&BigUint::from(k))
    }

    pub fn pow_big(&self, k: &BigUint) -> Self {
        if k.is_zero() {
            return Self::one(self.prime, max(self.rel_precision(), 1));
        }
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => {
                let kv = k
                    .to_i64()
                    .and_then(|k| k.checked_mul(*valuation))
                    .expect("valuation overflow in pow");
                if *rel_precision == 0 {
                    return Self::bounded_zero(self.prime, kv);
                }
                let modulus = prime_power(self.prime, *rel_precision);
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Approx {
                        valuation: kv,
                        unit: unit.modpow(k, &modulus),
                        rel_precision: *rel_precision,
                    },
                }
            }
        }
    }

    /// Multiplicative inverse at the same relative precision.
    pub fn inverse(&self) -> Result<Self, PadicError> {
        match &self.repr {
            Repr::Zero => Err(PadicError::ZeroInverse),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => {
                if *rel_precision == 0 {
                    return Err(PadicError::PrecisionExhausted {
                        abs_precision: *valuation,
                    });
                }
                let modulus = prime_power(self.prime, *rel_precision);
                let inv = unit.modinv(&modulus).ok_or(PadicError::ZeroInverse)?;
                Ok(PadicNumber {
                    prime: self.prime,
                    repr: Repr::Approx {
                        valuation: -valuation,
                        unit: inv,
                        rel_precision: *rel_precision,
                    },
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        self.mul(&other.inverse()?)
    }

    /// Multiplication by `p^l`.
    pub fn shift(&self, l: i64) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => PadicNumber {
                prime: self.prime,
                repr: Repr::Approx {
                    valuation: valuation + l,
                    unit: unit.clone(),
                    rel_precision: *rel_precision,
                },
            },
        }
    }

    /// Forgets every digit at or above `p^abs_precision`.
    pub fn truncate_abs(&self, abs_precision: i64) -> Self {
        match &self.repr {
            Repr::Zero => Self::bounded_zero(self.prime, abs_precision),
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } => {
                let current = valuation + *rel_precision as i64;
                if abs_precision >= current {
                    return self.clone();
                }
                if abs_precision <= *valuation {
                    return Self::bounded_zero(self.prime, abs_precision);
                }
                let n = (abs_precision - valuation) as u32;
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Approx {
                        valuation: *valuation,
                        unit: unit % prime_power(self.prime, n),
                        rel_precision: n,
                    },
                }
            }
        }
    }

    /// Treats the known digits as an exact finite expansion and pads it with
    /// zero digits up to `abs_precision`. Used for lifting iterates, whose
    /// residuals are always re-evaluated rather than inherited.
    pub fn pad_to_absolute(&self, abs_precision: i64) -> Self {
        match &self.repr {
            Repr::Approx {
                valuation,
                unit,
                rel_precision,
            } if *rel_precision > 0 => {
                let n = max(abs_precision - valuation, *rel_precision as i64) as u32;
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Approx {
                        valuation: *valuation,
                        unit: unit.clone(),
                        rel_precision: n,
                    },
                }
            }
            _ => self.clone(),
        }
    }

    /// `x = p^l * u` with `u` a unit carrying the same digits.
    pub fn unit_decompose(&self) -> Result<(i64, PadicNumber), PadicError> {
        match &self.repr {
            Repr::Approx {
                valuation,
                rel_precision,
                ..
            } if *rel_precision > 0 => Ok((*valuation, self.shift(-valuation))),
            _ => Err(PadicError::ZeroDecompose),
        }
    }

    /// Membership in `E_p = {x : |x - 1|_p < p^{-1/(p-1)}}`. For odd `p` this is
    /// the residue class `x = 1 mod p`.
    pub fn in_ep(&self) -> bool {
        self.valuation() == Valuation::Exact(0) && self.leading_digit() == Some(1)
    }

    /// `v_p(self - other)` without the cancellation check of [`arith`].
    pub fn distance_valuation(&self, other: &Self) -> Result<Valuation, PadicError> {
        Ok(self.sub(other)?.valuation())
    }

    /// Compares `|self|_p` with `|other|_p`; `None` when a bound is not decisive.
    pub fn cmp_norm(&self, other: &Self) -> Option<Ordering> {
        match (self.valuation(), other.valuation()) {
            (Valuation::Infinite, Valuation::Infinite) => Some(Ordering::Equal),
            (Valuation::Infinite, _) => Some(Ordering::Less),
            (_, Valuation::Infinite) => Some(Ordering::Greater),
            (Valuation::Exact(a), Valuation::Exact(b)) => Some(b.cmp(&a)),
            (Valuation::AtLeast(a), Valuation::Exact(b)) if a > b => Some(Ordering::Less),
            (Valuation::Exact(a), Valuation::AtLeast(b)) if b > a => Some(Ordering::Greater),
            _ => None,
        }
    }
}

/// `(n / p^v, v)` for nonzero `n`.
fn split_bigint(prime: Prime, n: &BigInt) -> (BigInt, u32) {
    let (sign, mag) = n.clone().into_parts();
    let (unit, v) = strip_p(prime, mag);
    (BigInt::from_biguint(sign, unit), v)
}

fn reduce_signed(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    n.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor is nonnegative")
}

fn to_digits(prime: Prime, unit: &BigUint, n: u32) -> Vec<u64> {
    let p = prime.get();
    let mut out = Vec::with_capacity(n as usize);
    if let Some(mut small) = unit.to_u64() {
        for _ in 0..n {
            out.push(small % p);
            small /= p;
        }
        return out;
    }
    let pb = BigUint::from(p);
    let mut rest = unit.clone();
    for _ in 0..n {
        let (q, r) = rest.div_rem(&pb);
        out.push(r.to_u64().unwrap_or(0));
        rest = q;
    }
    out
}

/// Binary operations exposed with the cancellation policy enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic: a result whose known digits all cancelled is reported
/// as [`PadicError::PrecisionExhausted`] instead of being passed off as zero.
pub fn arith(x: &PadicNumber, y: &PadicNumber, op: ArithOp) -> Result<PadicNumber, PadicError> {
    let out = match op {
        ArithOp::Add => x.add(y)?,
        ArithOp::Sub => x.sub(y)?,
        ArithOp::Mul => x.mul(y)?,
    };
    if let Valuation::AtLeast(a) = out.valuation() {
        return Err(PadicError::PrecisionExhausted { abs_precision: a });
    }
    Ok(out)
}

impl fmt::Display for PadicNumber {
    /// Canonical text form `d0,d1,...,d_{N-1}@v`; exact zero prints as `0`
    /// and a value with no known digits as `O(p^A)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => f.write_str("0"),
            Repr::Approx {
                valuation,
                rel_precision: 0,
                ..
            } => write!(f, "O({}^{})", self.prime, valuation),
            Repr::Approx { valuation, .. } => {
                let digits = self.digits();
                for (i, d) in digits.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, "@{valuation}")
            }
        }
    }
}
