use std::fmt;

use serde::Serialize;

use crate::padic::{PadicNumber, Prime};

/// Why an equation has no root, as a stable machine-readable tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NoSolutionReason {
    /// `k` does not divide `v_p(a)`.
    NormNotKthPower,
    /// No residue `xi` with `xi^k = a_0 (mod p)`.
    EmptySolP,
    /// `a != a_0^(p^s) + o[p^s]`.
    ConditionIIFailed,
}

impl fmt::Display for NoSolutionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoSolutionReason::NormNotKthPower => "NormNotKthPower",
            NoSolutionReason::EmptySolP => "EmptySolP",
            NoSolutionReason::ConditionIIFailed => "ConditionIIFailed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Solvable { kappa_p: usize },
    NoSolution(NoSolutionReason),
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable { .. })
    }

    pub fn reason(&self) -> Option<NoSolutionReason> {
        match self {
            Verdict::NoSolution(r) => Some(*r),
            Verdict::Solvable { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Solvable { kappa_p } => write!(f, "Solvable (kappa_p = {kappa_p})"),
            Verdict::NoSolution(r) => write!(f, "NoSolution: {r}"),
        }
    }
}

/// A root together with the residue class `xi` whose ball it lies in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub xi: u64,
    pub root: PadicNumber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub prime: Prime,
    /// Human-readable echo of the equation.
    pub problem: String,
    pub verdict: Verdict,
    /// Sorted by `xi`.
    pub roots: Vec<Root>,
    pub kappa_p: usize,
}

impl SolutionReport {
    pub(crate) fn no_solution(prime: Prime, problem: String, reason: NoSolutionReason) -> Self {
        SolutionReport {
            prime,
            problem,
            verdict: Verdict::NoSolution(reason),
            roots: Vec::new(),
            kappa_p: 0,
        }
    }

    pub(crate) fn solvable(prime: Prime, problem: String, mut roots: Vec<Root>) -> Self {
        roots.sort_by_key(|r| r.xi);
        let kappa_p = roots.len();
        SolutionReport {
            prime,
            problem,
            verdict: Verdict::Solvable { kappa_p },
            roots,
            kappa_p,
        }
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over Q_{}", self.problem, self.prime)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        for r in &self.roots {
            writeln!(f, "  xi = {}: {}", r.xi, r.root)?;
        }
        Ok(())
    }
}
