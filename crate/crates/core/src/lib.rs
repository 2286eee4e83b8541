//! Exact p-adic root finding for `x^k = a`, its Lipschitz perturbations,
//! monic polynomials close to a monomial, and fixed points of the Bethe-Potts
//! map `f(x) = ((b x - c) / (x - d))^k`.

pub mod cli;
pub mod hensel;
pub mod lipschitz;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod residue;
pub mod solvers;
