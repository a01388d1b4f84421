//! Free trace expressions on matrix tuples, the polarized
//! Cayley-Hamilton identity, Artin's semisimplicity criterion, and the
//! discriminant probe.

pub mod artin;
pub mod ch_identity;
pub mod expr;

pub use artin::{
    artin_semisimple, discriminant_probe, equivariance_check, generated_matrix_algebra,
    image_trace_algebra, trace_algebra_from_matrix_basis,
};
pub use ch_identity::{ch_multilinear, phi_sigma, CyclePermutation};
pub use expr::{eval, parse_expr, MatrixTuple, TraceExpr, Value};
