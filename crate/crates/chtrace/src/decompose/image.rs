//! The algebra generated by a module action inside End(V), with the
//! ordinary matrix trace, and the trace-form semisimplicity check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};
use crate::trace_algebra::FiniteTraceAlgebra;

use super::action::ModuleAction;

/// Numeric basis of the unital algebra generated by the action, capped
/// at dim².
pub fn image_basis(act: &ModuleAction) -> Vec<CMat> {
    linalg::matrix_algebra_closure(act.dim, &act.matrices(), 1e-9)
}

/// The generated algebra as a [`FiniteTraceAlgebra`] with the matrix
/// trace and ch_degree = dim.
pub fn image_algebra(act: &ModuleAction) -> Result<FiniteTraceAlgebra> {
    let basis = image_basis(act);
    let smat: Vec<linalg::ScalarMatrix> = basis
        .iter()
        .map(|b| {
            let mut m = linalg::ScalarMatrix::zeros(act.dim);
            for i in 0..act.dim {
                for j in 0..act.dim {
                    m.set(i, j, crate::arith::Scalar::C64(b[(i, j)]));
                }
            }
            m
        })
        .collect();
    crate::generic_matrices::trace_algebra_from_matrix_basis(act.dim, &smat)
}

/// Gram matrix tr(b_i·b_j) of an image basis.
pub fn gram_of_basis(basis: &[CMat]) -> CMat {
    let d = basis.len();
    CMat::from_fn(d, d, |i, j| basis[i].trace_of_product(&basis[j]))
}

/// True iff the trace form of the generated algebra is numerically
/// nondegenerate (smallest elimination pivot of the Gram above
/// `gram_tol` relative to its largest entry).
pub fn semisimplicity_check_with(act: &ModuleAction, gram_tol: f64) -> bool {
    let basis = image_basis(act);
    let gram = gram_of_basis(&basis);
    linalg::min_pivot_ratio(&gram) > gram_tol
}

pub fn semisimplicity_check(act: &ModuleAction) -> bool {
    semisimplicity_check_with(act, 1e-6)
}

/// Basis of the center of the generated algebra: elements of the span
/// commuting with every generator.
pub fn center_of_image(act: &ModuleAction, basis: &[CMat]) -> Vec<CMat> {
    let d = basis.len();
    let n = act.dim;
    let gens = act.matrices();
    let mut m = CMat::zeros(n * n * gens.len(), d);
    for (col, b) in basis.iter().enumerate() {
        for (gi, g) in gens.iter().enumerate() {
            let comm = b.matmul(g).sub(&g.matmul(b));
            for i in 0..n {
                for j in 0..n {
                    m[(gi * n * n + i * n + j, col)] = comm[(i, j)];
                }
            }
        }
    }
    let coords = linalg::nullspace(&m, 1e-9);
    coords
        .into_iter()
        .map(|xi| {
            let mut z = CMat::zeros(n, n);
            for (c, b) in xi.iter().zip(basis) {
                z = z.add(&b.scale(*c));
            }
            z
        })
        .collect()
}

/// Seeded random element of the center of the generated algebra.
pub fn random_central_element(act: &ModuleAction, seed: u64) -> Result<CMat> {
    let basis = image_basis(act);
    let center = center_of_image(act, &basis);
    if center.is_empty() {
        return Err(Error::DecompositionFailed(
            "image algebra has empty center".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = CMat::zeros(act.dim, act.dim);
    for c in &center {
        let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        z = z.add(&c.scale(w));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::ActingAlgebra;
    use crate::trace_algebra::radical;
    use crate::uq_sl2::{build_cyclic_rep, random_generic_char, tensor_action};

    #[test]
    fn single_generic_rep_generates_full_matrix_algebra() {
        let rep = build_cyclic_rep(3, &random_generic_char(3, 2), 0).unwrap();
        let act = rep.module_action();
        assert_eq!(image_basis(&act).len(), 9);
        let alg = image_algebra(&act).unwrap();
        assert_eq!(alg.dim(), 9);
        assert!(radical(&alg).unwrap().is_empty());
    }

    #[test]
    fn identity_action_is_one_dimensional() {
        let act = ModuleAction::new(
            vec![("I".into(), CMat::identity(4))],
            ActingAlgebra::FullQuantumGroup,
        )
        .unwrap();
        assert_eq!(image_basis(&act).len(), 1);
        assert!(semisimplicity_check(&act));
    }

    #[test]
    fn tensor_of_generic_pair_has_three_blocks_of_m3() {
        let r1 = build_cyclic_rep(3, &random_generic_char(3, 5), 0).unwrap();
        let r2 = build_cyclic_rep(3, &random_generic_char(3, 6), 0).unwrap();
        let act = tensor_action(&r1, &r2).unwrap();
        let basis = image_basis(&act);
        assert_eq!(basis.len(), 27, "3 blocks of M_3 inside M_9");
        assert!(semisimplicity_check(&act));
    }

    #[test]
    fn shift_action_is_not_semisimple() {
        // span{I, N} with N strictly upper: nilpotent ideal
        let mut shift = CMat::zeros(3, 3);
        shift[(0, 1)] = C64::new(1.0, 0.0);
        shift[(1, 2)] = C64::new(1.0, 0.0);
        let act =
            ModuleAction::new(vec![("N".into(), shift)], ActingAlgebra::FullQuantumGroup).unwrap();
        assert!(!semisimplicity_check(&act));
    }

    #[test]
    fn center_of_irreducible_action_is_scalars() {
        let rep = build_cyclic_rep(3, &random_generic_char(3, 9), 1).unwrap();
        let act = rep.module_action();
        let basis = image_basis(&act);
        let center = center_of_image(&act, &basis);
        assert_eq!(center.len(), 1);
        let (_, dev) = center[0].scalar_part();
        assert!(dev < 1e-8);
        let z = random_central_element(&act, 3).unwrap();
        assert!(act.max_commutator_norm(&z) < 1e-8);
    }
}
