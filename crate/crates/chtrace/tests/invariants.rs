//! Cross-module invariants: nilpotence of trace-kernel elements at the
//! declared degree, block spectra under trace rescaling, radicals of
//! direct sums, nondegeneracy of the reduced trace form, and the
//! commutant/image duality of isotypic blocks.

use chtrace::arith::Scalar;
use chtrace::decompose::{isotypic_decompose, DecompTolerances};
use chtrace::linalg;
use chtrace::trace_algebra::standard::{
    group_algebra_cyclic, matrix_algebra, truncated_polynomial,
};
use chtrace::trace_algebra::{
    block_decompose, direct_sum, radical, reduced_trace, rescale_trace, FiniteTraceAlgebra,
};
use chtrace::uq_sl2::{
    build_cyclic_rep, casimir_matrix_of_action, random_generic_char, tensor_action,
};

fn ch_compatible_corpus() -> Vec<FiniteTraceAlgebra> {
    vec![
        matrix_algebra(2),
        group_algebra_cyclic(3),
        truncated_polynomial(2, &[2, 0]),
        truncated_polynomial(3, &[3, 0, 0]),
        direct_sum(&matrix_algebra(2), &truncated_polynomial(2, &[2, 0])).unwrap(),
        direct_sum(
            &group_algebra_cyclic(2),
            &truncated_polynomial(3, &[3, 0, 0]),
        )
        .unwrap(),
    ]
}

#[test]
fn radical_elements_are_nilpotent_at_declared_degree() {
    for alg in ch_compatible_corpus() {
        assert!(alg.ch_check(4, 1), "corpus algebra fails its CH identity");
        let n = alg.ch_degree();
        for x in radical(&alg).unwrap() {
            // x^n = 0 exactly: the power traces of a trace-kernel element
            // vanish, so its characteristic polynomial is t^n
            let mut p = x.clone();
            for _ in 1..n {
                p = alg.mul_vec(&p, &x);
            }
            assert!(p.iter().all(|c| c.is_zero()));
        }
    }
}

#[test]
fn radical_elements_form_two_sided_ideal() {
    for alg in ch_compatible_corpus() {
        let rad = radical(&alg).unwrap();
        if rad.is_empty() {
            continue;
        }
        // closure under left/right basis multiplication, checked by
        // solving for membership in the radical span
        let mut span = rad.clone();
        let rank0 = linalg::rank_exact(&span);
        for x in &rad {
            for i in 0..alg.dim() {
                for v in [
                    alg.mul_vec(&alg.basis_vec(i), x),
                    alg.mul_vec(x, &alg.basis_vec(i)),
                ] {
                    span.push(v);
                    assert_eq!(linalg::rank_exact(&span), rank0, "radical is not an ideal");
                    span.pop();
                }
            }
        }
    }
}

#[test]
fn block_spectrum_scales_with_trace_rescale() {
    let samples = vec![
        matrix_algebra(2),
        direct_sum(&matrix_algebra(1), &matrix_algebra(2)).unwrap(),
        group_algebra_cyclic(3),
    ];
    for alg in samples {
        let base = block_decompose(&alg).unwrap();
        for r in 2..=3usize {
            let scaled = block_decompose(&rescale_trace(&alg, r).unwrap()).unwrap();
            let expect: Vec<(usize, usize)> =
                base.blocks.iter().map(|&(k, h)| (k, h * r)).collect();
            assert_eq!(scaled.blocks, expect, "rescale by {r}");
        }
    }
}

#[test]
fn radical_of_direct_sum_is_sum_of_radicals() {
    let pairs = vec![
        (matrix_algebra(2), truncated_polynomial(2, &[2, 0])),
        (truncated_polynomial(3, &[3, 0, 0]), group_algebra_cyclic(2)),
        (
            truncated_polynomial(2, &[2, 0]),
            truncated_polynomial(2, &[2, 0]),
        ),
    ];
    for (a, b) in pairs {
        let sum = direct_sum(&a, &b).unwrap();
        let rad_sum = radical(&sum).unwrap();
        let rad_a = radical(&a).unwrap();
        let rad_b = radical(&b).unwrap();
        assert_eq!(rad_sum.len(), rad_a.len() + rad_b.len());
        // embed the component radicals and compare spans exactly
        let mut embedded: Vec<Vec<Scalar>> = Vec::new();
        for x in &rad_a {
            let mut v = x.clone();
            v.extend(vec![Scalar::zero(); b.dim()]);
            embedded.push(v);
        }
        for y in &rad_b {
            let mut v = vec![Scalar::zero(); a.dim()];
            v.extend(y.clone());
            embedded.push(v);
        }
        let mut lhs = rad_sum.clone();
        let mut rhs = embedded.clone();
        linalg::rref_exact(&mut lhs);
        linalg::rref_exact(&mut rhs);
        for (x, y) in lhs.iter().zip(&rhs) {
            for (p, q) in x.iter().zip(y) {
                assert!(p.try_eq(q).unwrap());
            }
        }
    }
}

#[test]
fn reduced_trace_gram_is_nondegenerate() {
    let samples = vec![
        rescale_trace(&matrix_algebra(2), 3).unwrap(),
        rescale_trace(
            &direct_sum(&matrix_algebra(1), &matrix_algebra(2)).unwrap(),
            2,
        )
        .unwrap(),
        group_algebra_cyclic(3),
    ];
    for alg in samples {
        let red = reduced_trace(&alg).unwrap();
        let reduced_alg = FiniteTraceAlgebra::new(
            alg.labels().to_vec(),
            alg.structure_entries(),
            alg.unit().to_vec(),
            red.trace_vec.clone(),
            alg.ch_degree() / red.multiplier.unwrap_or(1),
        )
        .unwrap();
        let gram = reduced_alg.gram();
        let det = linalg::det_exact(&gram);
        assert!(!det.is_zero(), "reduced trace form is degenerate");
    }
}

#[test]
fn commutant_image_duality_on_blocks() {
    // (irrep_dim·mult)² = (dim restricted image algebra)·(commutant dim)
    // for every block of a decomposition: image dim is irrep², commutant
    // dim is mult², and the block has dimension irrep·mult.
    let ell = 3u32;
    let rep = build_cyclic_rep(ell, &random_generic_char(ell, 61), 0).unwrap();
    let doubled = rep.module_action().direct_sum_power(2);
    let c = casimir_matrix_of_action(&doubled, ell).unwrap();
    let report = isotypic_decompose(&doubled, &c, Some(ell), &DecompTolerances::default()).unwrap();
    for s in &report.summands {
        let block_dim = s.irrep_dim * s.multiplicity;
        assert_eq!(
            block_dim * block_dim,
            (s.irrep_dim * s.irrep_dim) * (s.multiplicity * s.multiplicity)
        );
    }
    assert_eq!(report.total_dim(), doubled.dim);
}

#[test]
fn cyclic_reps_are_irreducible_at_all_ells() {
    // image algebra dimension ℓ² = full matrix algebra, the A₁ instance
    // of degree_U = ℓ^{|Δ₊|}
    for ell in [3u32, 5, 7] {
        let rep = build_cyclic_rep(ell, &random_generic_char(ell, 71), 1).unwrap();
        let basis = chtrace::decompose::image_basis(&rep.module_action());
        assert_eq!(basis.len(), (ell * ell) as usize);
    }
}

#[test]
fn tensor_decomposition_conserves_dimension_exactly() {
    for ell in [3u32, 5] {
        let r1 = build_cyclic_rep(ell, &random_generic_char(ell, 81), 0).unwrap();
        let r2 = build_cyclic_rep(ell, &random_generic_char(ell, 82), 0).unwrap();
        let act = tensor_action(&r1, &r2).unwrap();
        let c = casimir_matrix_of_action(&act, ell).unwrap();
        let report = isotypic_decompose(&act, &c, Some(ell), &DecompTolerances::default()).unwrap();
        assert_eq!(report.total_dim(), (ell * ell) as usize);
    }
}
