//! Exact rational linear algebra: RREF, kernels, subspaces and a small
//! simplex used for strict-feasibility tests. Nothing here touches floating
//! point.

pub mod lp;
pub mod matrix;
pub mod rational;
pub mod subspace;

pub use lp::{lp_strictly_feasible, strict_witness, maximize, LpOutcome};
pub use matrix::{kernel, rank_of, rref, solve, RMatrix};
pub use rational::{Rational, RVector};
pub use subspace::Subspace;

/// Orthogonal complement, as a free function mirroring [`kernel`].
pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    s.orthogonal_complement()
}
