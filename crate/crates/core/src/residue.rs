//! Computations in `F_p`: power residues, `Sol_p(x^k - a)`, and `k = m p^s`.

use num_integer::Integer;

use crate::padic::{PadicNumber, Prime, Valuation};

/// Largest `p` for which `Sol_p` is found by scanning all of `F_p^*`.
pub const SCAN_LIMIT: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResidueError {
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{b} is not coprime to p = {p}")]
    NotCoprime { b: i64, p: u64 },
    #[error("expected a p-adic unit, got valuation {0}")]
    NotAUnit(Valuation),
    #[error("p = {0} is too large for an exhaustive residue scan")]
    ScanTooLarge(u64),
}

/// `k = m * p^s` with `p` not dividing `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KDecomposition {
    pub k: u64,
    pub m: u64,
    pub s: u32,
}

pub fn decompose_k(k: u64, p: Prime) -> Result<KDecomposition, ResidueError> {
    if k == 0 {
        return Err(ResidueError::ZeroExponent);
    }
    let mut m = k;
    let mut s = 0;
    while m.is_multiple_of(p.get()) {
        m /= p.get();
        s += 1;
    }
    Ok(KDecomposition { k, m, s })
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Whether `x^m = b (mod p)` is solvable, by `b^((p-1)/d) = 1` with `d = gcd(m, p-1)`.
pub fn power_residue_test(b: i64, m: u64, p: Prime) -> Result<bool, ResidueError> {
    if m == 0 {
        return Err(ResidueError::ZeroExponent);
    }
    let pv = p.get();
    let r = b.rem_euclid(pv as i64) as u64;
    if r == 0 {
        return Err(ResidueError::NotCoprime { b, p: pv });
    }
    let d = m.gcd(&(pv - 1));
    Ok(pow_mod(r, (pv - 1) / d, pv) == 1)
}

/// `Sol_p(x^k - a)` for a unit `a`, with its cardinality `kappa_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueAnalysis {
    pub p: Prime,
    pub k: u64,
    /// Leading digit of `a`.
    pub a0: u64,
    /// Ascending.
    pub sol_set: Vec<u64>,
    pub kappa_p: usize,
}

impl ResidueAnalysis {
    pub fn is_empty(&self) -> bool {
        self.sol_set.is_empty()
    }
}

/// Residues `xi` in `1..p` with `xi^k = a_0 (mod p)`.
///
/// The Euler-type criterion short-circuits the empty case; otherwise the set
/// is found by an exhaustive scan and its size is checked against
/// `gcd(k, p - 1)`.
pub fn sol_p(k: u64, a: &PadicNumber) -> Result<ResidueAnalysis, ResidueError> {
    if k == 0 {
        return Err(ResidueError::ZeroExponent);
    }
    let p = a.prime();
    if a.valuation() != Valuation::Exact(0) {
        return Err(ResidueError::NotAUnit(a.valuation()));
    }
    let a0 = a.leading_digit().expect("unit has a leading digit");
    sol_p_residue(k, a0, p)
}

/// [`sol_p`] for a residue `a0` in `1..p`.
pub fn sol_p_residue(k: u64, a0: u64, p: Prime) -> Result<ResidueAnalysis, ResidueError> {
    let pv = p.get();
    let decomposition = decompose_k(k, p)?;
    let residue = power_residue_test(a0 as i64, decomposition.m, p)?;
    let sol_set: Vec<u64> = if !residue {
        Vec::new()
    } else {
        if pv > SCAN_LIMIT {
            return Err(ResidueError::ScanTooLarge(pv));
        }
        (1..pv)
            .filter(|&xi| pow_mod(xi, k, pv) == a0 % pv)
            .collect()
    };
    assert_eq!(
        sol_set.is_empty(),
        !residue,
        "Euler criterion disagrees with exhaustive scan for k={k}, a0={a0}, p={pv}"
    );
    if !sol_set.is_empty() {
        assert_eq!(
            sol_set.len() as u64,
            k.gcd(&(pv - 1)),
            "kappa_p != gcd(k, p-1) for k={k}, a0={a0}, p={pv}"
        );
    }
    let kappa_p = sol_set.len();
    Ok(ResidueAnalysis {
        p,
        k,
        a0: a0 % pv,
        sol_set,
        kappa_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose_k(18, p(3)).unwrap(),
            KDecomposition { k: 18, m: 2, s: 2 }
        );
        assert_eq!(
            decompose_k(7, p(5)).unwrap(),
            KDecomposition { k: 7, m: 7, s: 0 }
        );
        assert_eq!(
            decompose_k(25, p(5)).unwrap(),
            KDecomposition { k: 25, m: 1, s: 2 }
        );
        assert_eq!(decompose_k(0, p(5)), Err(ResidueError::ZeroExponent));
    }

    #[test]
    fn power_residue_examples() {
        assert!(power_residue_test(2, 2, p(7)).unwrap());
        assert!(!power_residue_test(3, 2, p(7)).unwrap());
        for prime in [3, 5, 7, 11, 13] {
            for m in 1..10 {
                assert!(power_residue_test(1, m, p(prime)).unwrap());
            }
        }
        assert!(power_residue_test(-1, 2, p(5)).unwrap());
        assert_eq!(
            power_residue_test(14, 2, p(7)),
            Err(ResidueError::NotCoprime { b: 14, p: 7 })
        );
    }

    #[test]
    fn sol_p_examples() {
        let a = PadicNumber::from_integer(6, p(5), 4);
        let r = sol_p(2, &a).unwrap();
        assert_eq!((r.sol_set.clone(), r.kappa_p), (vec![1, 4], 2));

        let a = PadicNumber::from_integer(1, p(7), 4);
        assert_eq!(sol_p(3, &a).unwrap().sol_set, vec![1, 2, 4]);

        let a = PadicNumber::from_integer(2, p(5), 4);
        let r = sol_p(2, &a).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.kappa_p, 0);

        let a = PadicNumber::from_integer(10, p(5), 4);
        assert!(matches!(sol_p(2, &a), Err(ResidueError::NotAUnit(_))));
    }

    // Exhaustive over p <= 31, k <= 30: nonempty iff a0 is an m-th power
    // residue, and then the size is gcd(k, p - 1).
    #[test]
    fn sol_p_matches_residue_test_and_gcd_law() {
        for prime in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pr = p(prime);
            for k in 1..=30u64 {
                let m = decompose_k(k, pr).unwrap().m;
                for a0 in 1..prime {
                    let scan: Vec<u64> = (1..prime)
                        .filter(|&x| (1..=k).fold(1u64, |acc, _| acc * x % prime) == a0)
                        .collect();
                    let r = sol_p_residue(k, a0, pr).unwrap();
                    assert_eq!(r.sol_set, scan);
                    assert_eq!(
                        !scan.is_empty(),
                        power_residue_test(a0 as i64, m, pr).unwrap()
                    );
                    if !scan.is_empty() {
                        assert_eq!(r.kappa_p as u64, k.gcd(&(prime - 1)));
                    }
                    assert!(r.kappa_p as u64 <= k.min(prime - 1));
                }
            }
        }
    }
}
