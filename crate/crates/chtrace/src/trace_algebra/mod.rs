//! Finite-dimensional algebras with a scalar-valued formal trace:
//! Cayley-Hamilton verification, the trace-form radical, block
//! decomposition of the semisimple quotient, the reduced trace, and the
//! rescale/sum/tensor constructions.

pub mod algebra;
pub mod blocks;
pub mod constructions;
pub mod io;
pub mod radical;
pub mod standard;

pub use algebra::{char_poly_coeffs, AxiomFailure, DiagnosticReport, FiniteTraceAlgebra};
pub use blocks::{
    block_decompose, block_decompose_seeded, reduced_trace, BlockSpectrum, ReducedTrace,
};
pub use constructions::{direct_sum, rescale_trace, tensor_product};
pub use io::{algebra_from_json, algebra_to_json};
pub use radical::radical;
