//! U_ε(sl₂) at an odd root of unity: exact PBW arithmetic, the Casimir,
//! exact coproduct identities on ℓ-th powers, Z₀-characters with their
//! group law, and numeric ℓ-dimensional cyclic representations.

pub mod charz0;
pub mod cyclic;
pub mod pbw;
pub mod tensor;

pub use charz0::{random_generic_char, z0_product, CentralCharZ0};
pub use cyclic::{
    borel_restriction, build_cyclic_rep, build_cyclic_rep_with, candidate_casimirs,
    casimir_matrix_of_action, casimir_matrix_parts, character_from_matrices, eps_complex,
    rep_character, tensor_action, CyclicRep, RepTolerances,
};
pub use pbw::{casimir, Mono, UqElement};
pub use tensor::{delta_e, delta_ell_power_defects, delta_f, delta_k, UqTensorElement};
