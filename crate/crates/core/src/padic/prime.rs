use std::fmt;

use super::PadicError;

/// An odd rational prime `p >= 3`.
///
/// Primality is checked on construction: by trial division below `2^32`, and
/// by Miller-Rabin with the first twelve prime bases above that, which is a
/// deterministic test for every 64-bit integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        if p == 2 {
            return Err(PadicError::EvenPrime);
        }
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `v_p(n)` for a nonzero machine integer.
    pub fn valuation_of(self, mut n: u64) -> Option<u32> {
        if n == 0 {
            return None;
        }
        let mut v = 0;
        while n.is_multiple_of(self.0) {
            n /= self.0;
            v += 1;
        }
        Some(v)
    }

    /// `p^e` if it fits in a `u64`.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = PadicError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    if n < (1 << 32) {
        let mut d = 3u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        return true;
    }
    miller_rabin(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert_eq!(Prime::new(2), Err(PadicError::EvenPrime));
        assert_eq!(Prime::new(1), Err(PadicError::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(PadicError::NotPrime(9)));
        assert_eq!(Prime::new(561), Err(PadicError::NotPrime(561)));
    }

    #[test]
    fn accepts_small_and_large_primes() {
        for p in [3, 5, 7, 11, 13, 31, 65_537, 4_294_967_291] {
            assert_eq!(Prime::new(p).unwrap().get(), p);
        }
        // 2^61 - 1
        assert!(Prime::new((1 << 61) - 1).is_ok());
        // strong pseudoprime to bases 2..=37 would be > 2^64; this one is 3215031751 = 151*751*28351
        assert!(Prime::new(3_215_031_751).is_err());
        assert!(Prime::new(((1u64 << 61) - 1) * 3).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in (1u64 << 32) - 2000..(1u64 << 32) + 2000 {
            let trial = {
                let mut d = 2u64;
                let mut prime = true;
                while d * d <= n {
                    if n % d == 0 {
                        prime = false;
                        break;
                    }
                    d += 1;
                }
                prime
            };
            assert_eq!(miller_rabin(n) || n == 2, trial, "n = {n}");
        }
    }

    #[test]
    fn valuation_of_integers() {
        let p = Prime::new(3).unwrap();
        assert_eq!(p.valuation_of(54), Some(3));
        assert_eq!(p.valuation_of(10), Some(0));
        assert_eq!(p.valuation_of(0), None);
    }
}
