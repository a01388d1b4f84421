//! Internal linear-algebra kernels: exact elimination over tagged scalars
//! and dense complex routines (rank, kernel, eigenvalues, closures).

pub mod cmat;
pub mod exact;

pub use cmat::{
    cluster_values, eigenvalues, inverse, matrix_algebra_closure, min_pivot_ratio, nullspace,
    nullspace_abs, orthonormalize, rank, rank_abs, rref, rref_abs, rref_limited, solve, CMat, C64,
};
pub use exact::{det_exact, nullspace_exact, rank_exact, rref_exact, solve_exact, ScalarMatrix};
