use std::fmt;

use crate::hensel::{condition_ii_holds, digit_lift, newton_seed, PerturbedMonomial};
use crate::padic::{PadicNumber, Valuation};
use crate::residue::{decompose_k, sol_p, KDecomposition, ResidueAnalysis};

use super::{verify, NoSolutionReason, Root, SolutionReport, SolveError, Verdict};

/// The outcome of the solvability criterion for `x^k = a` over `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solvability {
    pub verdict: Verdict,
    pub decomposition: KDecomposition,
    /// `v_p(a) / k` when `k` divides `v_p(a)`.
    pub root_valuation: Option<i64>,
    /// `a p^(-v_p(a))`.
    pub unit_part: PadicNumber,
    /// Present once the norm test has passed.
    pub residues: Option<ResidueAnalysis>,
}

pub fn check_solvability(k: u64, a: &PadicNumber) -> Result<Solvability, SolveError> {
    let decomposition = decompose_k(k, a.prime())?;
    let v = match a.valuation() {
        Valuation::Exact(v) => v,
        _ => return Err(SolveError::ZeroInput),
    };
    let unit_part = a.shift(-v);
    let mut out = Solvability {
        verdict: Verdict::NoSolution(NoSolutionReason::NormNotKthPower),
        decomposition,
        root_valuation: None,
        unit_part,
        residues: None,
    };
    if v.rem_euclid(k as i64) != 0 {
        return Ok(out);
    }
    out.root_valuation = Some(v / k as i64);
    let residues = sol_p(k, &out.unit_part)?;
    out.verdict = if residues.is_empty() {
        Verdict::NoSolution(NoSolutionReason::EmptySolP)
    } else if !condition_ii_holds(&out.unit_part, decomposition.s)? {
        Verdict::NoSolution(NoSolutionReason::ConditionIIFailed)
    } else {
        Verdict::Solvable {
            kappa_p: residues.kappa_p,
        }
    };
    out.residues = Some(residues);
    Ok(out)
}

/// Unit digits `a` must carry for an `n_digits` root of `x^k = a`.
pub(crate) fn required_digits(s: u32, n_digits: u32) -> i64 {
    (n_digits as i64 + s as i64).max(2 * s as i64 + 1)
}

pub(crate) fn check_precision(a: &PadicNumber, s: u32, n_digits: u32) -> Result<(), SolveError> {
    let needed = required_digits(s, n_digits);
    if (a.rel_precision() as i64) < needed {
        return Err(SolveError::InsufficientPrecision {
            needed,
            known: Valuation::Exact(a.rel_precision() as i64),
        });
    }
    Ok(())
}

/// The root of `F` in `B_1(xi)`: Newton seed on `x^k = a`, then the digit lift
/// on the full `F`.
pub(crate) fn lift_in_ball(
    f: &PerturbedMonomial,
    xi: u64,
    n_digits: u32,
) -> Result<PadicNumber, SolveError> {
    let s = f.decomposition().s;
    let seed = newton_seed(f.a(), f.k(), xi, n_digits + 2 * s + 4)?;
    Ok(digit_lift(f, &seed, n_digits)?)
}

/// All roots of `x^k = a` in `Q_p`, each with `n_digits` unit digits.
pub fn solve_monomial(
    k: u64,
    a: &PadicNumber,
    n_digits: u32,
) -> Result<SolutionReport, SolveError> {
    let p = a.prime();
    let problem = format!("x^{k} = {a}");
    let analysis = check_solvability(k, a)?;
    if let Verdict::NoSolution(reason) = analysis.verdict {
        return Ok(SolutionReport::no_solution(p, problem, reason));
    }
    let s = analysis.decomposition.s;
    let unit = &analysis.unit_part;
    let shift = analysis.root_valuation.expect("norm test passed");
    let residues = analysis.residues.expect("norm test passed");
    check_precision(unit, s, n_digits)?;

    let mut roots = Vec::with_capacity(residues.kappa_p);
    if k == 1 {
        roots.push(Root {
            xi: residues.a0,
            root: a.truncate_abs(shift + n_digits as i64),
        });
    } else {
        let f = PerturbedMonomial::monomial(k, unit.clone())?;
        for &xi in &residues.sol_set {
            let root = lift_in_ball(&f, xi, n_digits)?.shift(shift);
            roots.push(Root { xi, root });
        }
    }
    let av = shift * k as i64;
    for r in &roots {
        verify(r.root.pow(k).sub(a)?.valuation(), av + n_digits as i64)?;
        debug_assert_eq!(r.root.leading_digit(), Some(r.xi));
    }
    Ok(SolutionReport::solvable(p, problem, roots))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrincipalFailure {
    /// `a` is not `1 mod p`.
    NotInEp,
    /// `|k|_p <= |a - 1|_p`: the equation has no solution at all.
    NoSolution,
}

impl fmt::Display for PrincipalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrincipalFailure::NotInEp => f.write_str("a is not in E_p"),
            PrincipalFailure::NoSolution => {
                f.write_str("|k|_p <= |a - 1|_p, so x^k = a has no solution")
            }
        }
    }
}

/// The unique `k`-th root of `a` lying in `E_p`, for `a` in `E_p` with
/// `|a - 1|_p < |k|_p`.
pub fn principal_kth_root(
    a: &PadicNumber,
    k: u64,
    n_digits: u32,
) -> Result<PadicNumber, SolveError> {
    let p = a.prime();
    let s = decompose_k(k, p)?.s;
    if !a.in_ep() {
        return Err(SolveError::NotPrincipalDomain(PrincipalFailure::NotInEp));
    }
    let one = PadicNumber::one(p, a.rel_precision().max(1));
    match a.sub(&one)?.valuation() {
        Valuation::Exact(e) if e <= s as i64 => {
            return Err(SolveError::NotPrincipalDomain(PrincipalFailure::NoSolution))
        }
        v @ Valuation::AtLeast(e) if e <= s as i64 => {
            return Err(SolveError::InsufficientPrecision {
                needed: s as i64 + 1,
                known: v,
            })
        }
        _ => {}
    }
    check_precision(a, s, n_digits)?;
    let f = PerturbedMonomial::monomial(k, a.clone())?;
    let root = lift_in_ball(&f, 1, n_digits)?;
    verify(root.pow(k).sub(a)?.valuation(), n_digits as i64)?;
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Prime;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn int(n: i64, prime: Prime) -> PadicNumber {
        PadicNumber::from_integer(n, prime, 24)
    }

    #[test]
    fn solvability_examples() {
        let three = p(3);
        let verdict = |k, a| check_solvability(k, &int(a, three)).unwrap().verdict;
        assert_eq!(
            verdict(3, 3),
            Verdict::NoSolution(NoSolutionReason::NormNotKthPower)
        );
        assert_eq!(
            verdict(3, 4),
            Verdict::NoSolution(NoSolutionReason::ConditionIIFailed)
        );
        assert_eq!(verdict(3, 10), Verdict::Solvable { kappa_p: 1 });
        assert_eq!(
            check_solvability(2, &PadicNumber::zero(three)),
            Err(SolveError::ZeroInput)
        );
    }

    #[test]
    fn monomial_examples() {
        let five = p(5);
        let r = solve_monomial(2, &int(6, five), 4).unwrap();
        let digits: Vec<_> = r.roots.iter().map(|r| (r.xi, r.root.digits())).collect();
        assert_eq!(digits, vec![(1, vec![1, 3, 0, 4]), (4, vec![4, 1, 4, 0])]);

        let r = solve_monomial(3, &int(10, p(3)), 3).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].root.digits(), vec![1, 1, 1]);

        let r = solve_monomial(2, &int(50, five), 4).unwrap();
        assert_eq!(r.verdict, Verdict::NoSolution(NoSolutionReason::EmptySolP));
        assert!(r.roots.is_empty());
    }

    #[test]
    fn monomial_over_qp_rescales() {
        // x^2 = 6 * 25: roots are 5 * sqrt(6)
        let five = p(5);
        let r = solve_monomial(2, &int(150, five), 4).unwrap();
        for root in &r.roots {
            assert_eq!(root.root.valuation(), Valuation::Exact(1));
        }
        assert_eq!(r.roots[0].root.digits(), vec![1, 3, 0, 4]);
        // x^2 = 1/25
        let a = PadicNumber::from_rational(1, 25, five, 12).unwrap();
        let r = solve_monomial(2, &a, 6).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].root.valuation(), Valuation::Exact(-1));
    }

    #[test]
    fn degree_one_echoes_input() {
        let r = solve_monomial(1, &int(7, p(5)), 2).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].root.digits(), vec![2, 1]);
    }

    #[test]
    fn insufficient_input_precision_is_reported() {
        let three = p(3);
        let a = PadicNumber::from_digits(three, 0, &[1, 0, 1]).unwrap();
        assert!(matches!(
            solve_monomial(3, &a, 6),
            Err(SolveError::InsufficientPrecision { needed: 7, .. })
        ));
    }

    #[test]
    fn principal_root_examples() {
        let three = p(3);
        let one = principal_kth_root(&int(1, three), 5, 8).unwrap();
        assert_eq!(one.digits(), vec![1, 0, 0, 0, 0, 0, 0, 0]);

        let r = principal_kth_root(&int(10, three), 3, 3).unwrap();
        assert_eq!(r.digits(), vec![1, 1, 1]);

        assert_eq!(
            principal_kth_root(&int(4, three), 3, 3),
            Err(SolveError::NotPrincipalDomain(PrincipalFailure::NoSolution))
        );
        assert_eq!(
            principal_kth_root(&int(2, three), 3, 3),
            Err(SolveError::NotPrincipalDomain(PrincipalFailure::NotInEp))
        );
    }
}
