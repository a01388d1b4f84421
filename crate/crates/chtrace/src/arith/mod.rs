//! Exact arithmetic: rationals, cyclotomic numbers, q-combinatorics, and
//! the controlled embedding into complex floating point.

pub mod cyclo;
pub mod qcomb;
pub mod scalar;

pub use cyclo::{cyclo, cyclotomic_poly, euler_phi, rat, rat_i64, rat_to_f64, CycloNum, Rat};
pub use qcomb::{q_binomial, q_int};
pub use scalar::{scalar_from_json_value, Scalar, ScalarTag};
