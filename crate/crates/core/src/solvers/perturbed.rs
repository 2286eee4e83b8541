use std::fmt;

use crate::hensel::PerturbedMonomial;
use crate::lipschitz::LipschitzFunction;
use crate::padic::{PadicError, PadicNumber, Valuation};
use crate::poly::{MonicPolynomial, Polynomial};
use crate::residue::decompose_k;

use super::monomial::{check_precision, check_solvability, lift_in_ball};
use super::{verify, Root, SolutionReport, SolveError, Verdict};

/// Roots in `Z_p` of `F(x) = x^k - a + eps f(x)` for a unit `a`,
/// `|eps|_p < |k^2|_p`, and `f` with Lipschitz exponent at most `s`.
///
/// Solvability is decided by the unperturbed `x^k = a`; each root satisfies
/// `|F(root)|_p <= p^(-n_digits)`.
pub fn solve_perturbed(
    k: u64,
    a: &PadicNumber,
    epsilon: &PadicNumber,
    f: &LipschitzFunction,
    n_digits: u32,
) -> Result<SolutionReport, SolveError> {
    let p = a.prime();
    for other in [epsilon.prime(), f.prime()] {
        if other != p {
            return Err(PadicError::PrimeMismatch(p.get(), other.get()).into());
        }
    }
    if a.valuation() != Valuation::Exact(0) {
        return Err(SolveError::NotAUnit(a.valuation()));
    }
    let s = decompose_k(k, p)?.s;
    let bound = 2 * s as i64;
    if !epsilon.valuation().exceeds(bound) {
        return Err(SolveError::EpsilonTooLarge {
            found: epsilon.valuation(),
            bound,
        });
    }
    if f.exponent() > s as i64 {
        return Err(SolveError::LipschitzTooLoose {
            exponent: f.exponent(),
            s,
        });
    }

    let problem = match f.polynomial() {
        Some(poly) => format!("x^{k} - ({a}) + ({epsilon})({poly}) = 0"),
        None => format!("x^{k} - ({a}) + ({epsilon}) f(x) = 0"),
    };
    let analysis = check_solvability(k, a)?;
    let residues = match analysis.verdict {
        Verdict::NoSolution(reason) => return Ok(SolutionReport::no_solution(p, problem, reason)),
        Verdict::Solvable { .. } => analysis.residues.expect("solvable"),
    };
    check_precision(a, s, n_digits)?;

    let big_f = PerturbedMonomial::perturbed(k, a.clone(), epsilon.clone(), f.clone())?;
    let mut roots = Vec::with_capacity(residues.kappa_p);
    for &xi in &residues.sol_set {
        let root = lift_in_ball(&big_f, xi, n_digits)?;
        verify(big_f.eval(&root)?.valuation(), n_digits as i64)?;
        roots.push(Root { xi, root });
    }
    Ok(SolutionReport::solvable(p, problem, roots))
}

/// Which hypothesis of the polynomial solver failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolynomialHypothesis {
    /// `a^(k)` is not a unit.
    ConstantNotUnit,
    /// Some `|a^(j)|_p >= p^(-2s)` with `j < k`.
    MiddleCoefficientsTooLarge {
        index: usize,
        valuation: Valuation,
        bound: i64,
    },
}

impl fmt::Display for PolynomialHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolynomialHypothesis::ConstantNotUnit => f.write_str("ConstantNotUnit"),
            PolynomialHypothesis::MiddleCoefficientsTooLarge {
                index,
                valuation,
                bound,
            } => write!(
                f,
                "MiddleCoefficientsTooLarge: v(a^({index})) = {valuation}, need > {bound}"
            ),
        }
    }
}

/// Roots in `Z_p` of a monic `P_k` whose constant term is a unit and whose
/// other lower coefficients satisfy `|a^(j)|_p < p^(-2s)`.
///
/// `P_k` is rewritten as `x^k + a^(k) + eps f(x)` with `eps = p^mu`, `mu` the
/// least middle valuation, and handed to [`solve_perturbed`].
pub fn solve_polynomial(
    poly: &MonicPolynomial,
    n_digits: u32,
) -> Result<SolutionReport, SolveError> {
    let p = poly.prime();
    let k = poly.degree();
    let constant = poly.constant();
    if constant.valuation() != Valuation::Exact(0) {
        return Err(SolveError::PolynomialHypothesis(
            PolynomialHypothesis::ConstantNotUnit,
        ));
    }
    let s = decompose_k(k, p)?.s;
    let bound = 2 * s as i64;
    let middle = poly.middle();
    for (i, c) in middle.iter().enumerate() {
        if !c.valuation().exceeds(bound) {
            return Err(SolveError::PolynomialHypothesis(
                PolynomialHypothesis::MiddleCoefficientsTooLarge {
                    index: i + 1,
                    valuation: c.valuation(),
                    bound,
                },
            ));
        }
    }

    let mu = middle
        .iter()
        .filter_map(|c| c.valuation().lower_bound())
        .min();
    let (epsilon, f) = match mu {
        None => (
            PadicNumber::zero(p),
            Polynomial::new(vec![PadicNumber::zero(p)])?,
        ),
        Some(mu) => {
            let widest = middle
                .iter()
                .filter_map(|c| c.abs_precision())
                .max()
                .unwrap_or(0);
            let epsilon = PadicNumber::one(p, (widest - mu).max(0) as u32 + n_digits + 4).shift(mu);
            // f(x) = sum_{j<k} (a^(j) / eps) x^(k-j), ascending
            let mut coeffs = vec![PadicNumber::zero(p)];
            coeffs.extend(middle.iter().rev().map(|c| c.shift(-mu)));
            (epsilon, Polynomial::new(coeffs)?)
        }
    };
    let f = LipschitzFunction::from_polynomial(f);
    let mut report = solve_perturbed(k, &constant.neg(), &epsilon, &f, n_digits)?;
    for r in &report.roots {
        verify(poly.eval(&r.root)?.valuation(), n_digits as i64)?;
    }
    report.problem = format!("{poly} = 0");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Prime;
    use crate::solvers::NoSolutionReason;

    fn five() -> Prime {
        Prime::new(5).unwrap()
    }

    fn int(n: i64) -> PadicNumber {
        PadicNumber::from_integer(n, five(), 24)
    }

    fn identity() -> LipschitzFunction {
        LipschitzFunction::from_polynomial(Polynomial::from_integers(&[0, 1], five(), 24).unwrap())
    }

    fn monic(lower: &[i64]) -> MonicPolynomial {
        MonicPolynomial::new(lower.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn factorizable_perturbation() {
        let r = solve_perturbed(2, &int(6), &int(5), &identity(), 4).unwrap();
        let got: Vec<_> = r.roots.iter().map(|r| r.root.digits()).collect();
        assert_eq!(got, vec![vec![1, 0, 0, 0], vec![4, 3, 4, 4]]);
    }

    #[test]
    fn small_perturbation_keeps_two_roots() {
        let r = solve_perturbed(2, &int(6), &int(125), &identity(), 8).unwrap();
        assert_eq!(r.roots.iter().map(|r| r.xi).collect::<Vec<_>>(), vec![1, 4]);
    }

    #[test]
    fn perturbed_no_solution_and_precondition_errors() {
        let r = solve_perturbed(2, &int(2), &int(5), &identity(), 4).unwrap();
        assert_eq!(r.verdict, Verdict::NoSolution(NoSolutionReason::EmptySolP));

        let three = Prime::new(3).unwrap();
        let a = PadicNumber::from_integer(10, three, 24);
        let eps = PadicNumber::from_integer(9, three, 24);
        let f = LipschitzFunction::from_polynomial(
            Polynomial::from_integers(&[0, 1], three, 24).unwrap(),
        );
        assert!(matches!(
            solve_perturbed(3, &a, &eps, &f, 4),
            Err(SolveError::EpsilonTooLarge { bound: 2, .. })
        ));
        let eps = PadicNumber::from_integer(27, three, 24);
        let loose = LipschitzFunction::new(three, 2, |x: &PadicNumber| Ok(x.clone())).unwrap();
        assert_eq!(
            solve_perturbed(3, &a, &eps, &loose, 4).unwrap_err(),
            SolveError::LipschitzTooLoose { exponent: 2, s: 1 }
        );
    }

    #[test]
    fn polynomial_examples() {
        let r = solve_polynomial(&monic(&[125, -6]), 3).unwrap();
        assert_eq!(r.roots.iter().map(|r| r.xi).collect::<Vec<_>>(), vec![1, 4]);

        let r = solve_polynomial(&monic(&[0, -1]), 6).unwrap();
        let got: Vec<_> = r.roots.iter().map(|r| r.root.digits()).collect();
        assert_eq!(got, vec![vec![1, 0, 0, 0, 0, 0], vec![4; 6]]);

        let r = solve_polynomial(&monic(&[5, -6]), 4).unwrap();
        let got: Vec<_> = r.roots.iter().map(|r| r.root.digits()).collect();
        assert_eq!(got, vec![vec![1, 0, 0, 0], vec![4, 3, 4, 4]]);

        let r = solve_polynomial(&monic(&[0, -2]), 4).unwrap();
        assert_eq!(r.verdict, Verdict::NoSolution(NoSolutionReason::EmptySolP));
    }

    #[test]
    fn polynomial_hypotheses() {
        assert_eq!(
            solve_polynomial(&monic(&[1, -10]), 4).unwrap_err(),
            SolveError::PolynomialHypothesis(PolynomialHypothesis::ConstantNotUnit)
        );
        // k = 5 over Q_5: s = 1, middle coefficients need valuation > 2
        let p = monic(&[0, 0, 25, 0, -1]);
        assert!(matches!(
            solve_polynomial(&p, 4).unwrap_err(),
            SolveError::PolynomialHypothesis(PolynomialHypothesis::MiddleCoefficientsTooLarge {
                index: 3,
                ..
            })
        ));
        let p = monic(&[0, 0, 125, 0, -1]);
        assert_eq!(solve_polynomial(&p, 4).unwrap().roots.len(), 1);
    }
}
