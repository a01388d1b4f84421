//! Trace-algebra workbench.
//!
//! Exact Cayley-Hamilton machinery for finite-dimensional algebras with a
//! formal trace, generic-matrix identity checks, root-system degree
//! predictions, and a quantum sl₂ engine at odd roots of unity whose
//! tensor and branching decompositions are verified against the
//! predictions.
//!
//! ```
//! // tensor two generic 3-dimensional irreducibles and decompose:
//! // three summands of dimension 3, multiplicity 1
//! let verdict = chtrace::decompose::verify_clebsch_gordan(3, 1, 2).unwrap();
//! assert!(verdict.all_passed());
//!
//! // degree predictions for the same type
//! let rd = chtrace::root_data::RootDatum::build(chtrace::root_data::TypeLetter::A, 1).unwrap();
//! assert_eq!(rd.predict(3).unwrap().degree_u.exponent, 1);
//! ```

pub mod arith;
pub mod decompose;
pub mod error;
pub mod generic_matrices;
pub mod linalg;
pub mod root_data;
pub mod trace_algebra;
pub mod uq_sl2;

pub use error::{Error, Result};

#[cfg(test)]
mod tests {
    /// Values are immutable after construction and safe to share across
    /// threads; seeded operations make parallel runs reproducible.
    #[test]
    fn core_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::arith::Scalar>();
        check::<crate::arith::CycloNum>();
        check::<crate::trace_algebra::FiniteTraceAlgebra>();
        check::<crate::generic_matrices::MatrixTuple>();
        check::<crate::generic_matrices::TraceExpr>();
        check::<crate::root_data::RootDatum>();
        check::<crate::uq_sl2::UqElement>();
        check::<crate::uq_sl2::CyclicRep>();
        check::<crate::decompose::ModuleAction>();
        check::<crate::decompose::DecompositionReport>();
    }
}
