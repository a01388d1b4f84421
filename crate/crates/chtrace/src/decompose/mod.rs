//! Decomposition of module actions into isotypic components and the
//! verification harnesses for the tensor, branching, and rescaled
//! restriction statements.

pub mod action;
pub mod image;
pub mod isotypic;
pub mod verify;

pub use action::{ActingAlgebra, ModuleAction};
pub use image::{
    image_algebra, image_basis, random_central_element, semisimplicity_check,
    semisimplicity_check_with,
};
pub use isotypic::{isotypic_decompose, DecompTolerances, DecompositionReport, Summand};
pub use verify::{
    branch_trial_report, cg_trial_report, verify_branching, verify_branching_with,
    verify_clebsch_gordan, verify_clebsch_gordan_with, verify_rescaled_restriction,
    verify_rescaled_restriction_with, Expected, TrialOutcome, TrialReport, VerdictReport,
};
