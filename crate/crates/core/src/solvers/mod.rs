//! User-facing solvers. Each returns a [`SolutionReport`] whose roots have
//! been checked by direct evaluation; "no root exists" is a report, not an
//! error.

mod fixed_point;
mod monomial;
mod perturbed;
mod report;

pub use fixed_point::{
    fixed_points, FixedPoint, FixedPointFlag, FixedPointProblem, FixedPointReport,
};
pub use monomial::{
    check_solvability, principal_kth_root, solve_monomial, PrincipalFailure, Solvability,
};
pub use perturbed::{solve_perturbed, solve_polynomial, PolynomialHypothesis};
pub use report::{NoSolutionReason, Root, SolutionReport, Verdict};

use crate::hensel::HenselError;
use crate::padic::{PadicError, Valuation};
use crate::poly::PolyError;
use crate::residue::ResidueError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("a must be nonzero")]
    ZeroInput,
    #[error("a must be a p-adic unit, got valuation {0}")]
    NotAUnit(Valuation),
    #[error("|eps|_p < |k^2|_p is required: v(eps) = {found}, need > {bound}")]
    EpsilonTooLarge { found: Valuation, bound: i64 },
    #[error("Lipschitz exponent {exponent} exceeds s = {s}")]
    LipschitzTooLoose { exponent: i64, s: u32 },
    #[error("polynomial hypothesis violated: {0}")]
    PolynomialHypothesis(PolynomialHypothesis),
    #[error("fixed-point hypothesis violated: {0}")]
    FixedPointHypothesis(FixedPointFlag),
    #[error("c = b d: f is constant")]
    DegenerateMap,
    #[error("no principal root: {0}")]
    NotPrincipalDomain(PrincipalFailure),
    #[error("inputs are not known precisely enough: need {needed} digits, have {known}")]
    InsufficientPrecision { needed: i64, known: Valuation },
    #[error("computed value failed verification: residual valuation {found}, need {needed}")]
    VerificationFailed { needed: i64, found: Valuation },
    #[error(transparent)]
    Hensel(HenselError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<HenselError> for SolveError {
    fn from(e: HenselError) -> Self {
        match e {
            HenselError::InsufficientPrecision { needed, known } => {
                SolveError::InsufficientPrecision { needed, known }
            }
            HenselError::Residue(r) => SolveError::Residue(r),
            HenselError::Padic(p) => SolveError::Padic(p),
            other => SolveError::Hensel(other),
        }
    }
}

/// `Ok(())` when `v >= needed` is certified; a precision error when the value
/// is only known to be `O(p^A)` with `A < needed`.
pub(crate) fn verify(v: Valuation, needed: i64) -> Result<(), SolveError> {
    match v {
        _ if v.is_at_least(needed) => Ok(()),
        Valuation::AtLeast(_) => Err(SolveError::InsufficientPrecision { needed, known: v }),
        _ => Err(SolveError::VerificationFailed { needed, found: v }),
    }
}
