//! Stretch experiment (not part of the acceptance gate): tensor products
//! of Borel modules. For rank 1 the prediction is a single summand class
//! of dimension ℓ with multiplicity ℓ, since the Borel center equals its
//! ℓ-th-power subalgebra (s = n) and the tensor square has dimension ℓ².
//! This exercises the commutant path with multiplicity > 1 on a
//! noncommutative image algebra.

use chtrace::decompose::{
    isotypic_decompose, random_central_element, semisimplicity_check, ActingAlgebra,
    DecompTolerances, ModuleAction,
};
use chtrace::linalg::CMat;
use chtrace::uq_sl2::{borel_restriction, build_cyclic_rep, random_generic_char, z0_product};

fn borel_tensor_action(
    a: &chtrace::decompose::ModuleAction,
    b: &chtrace::decompose::ModuleAction,
) -> ModuleAction {
    let n = a.dim;
    let id = CMat::identity(n);
    let e1 = a.generator("E").unwrap();
    let k1 = a.generator("K").unwrap();
    let ki1 = a.generator("Kinv").unwrap();
    let e2 = b.generator("E").unwrap();
    let k2 = b.generator("K").unwrap();
    let ki2 = b.generator("Kinv").unwrap();
    ModuleAction::new(
        vec![
            ("E".into(), e1.kron(&id).add(&k1.kron(e2))),
            ("K".into(), k1.kron(k2)),
            ("Kinv".into(), ki1.kron(ki2)),
        ],
        ActingAlgebra::Borel,
    )
    .unwrap()
}

#[test]
fn borel_tensor_square_has_full_multiplicity() {
    for ell in [3u32, 5] {
        let chi1 = random_generic_char(ell, 301);
        let chi2 = random_generic_char(ell, 302);
        let r1 = build_cyclic_rep(ell, &chi1, 0).unwrap();
        let r2 = build_cyclic_rep(ell, &chi2, 1).unwrap();
        let b1 = borel_restriction(&r1);
        let b2 = borel_restriction(&r2);
        let act = borel_tensor_action(&b1, &b2);
        assert!(
            semisimplicity_check(&act),
            "Borel tensor not semisimple at ell={ell}"
        );
        let central = random_central_element(&act, 7).unwrap();
        let report =
            isotypic_decompose(&act, &central, Some(ell), &DecompTolerances::default()).unwrap();
        assert_eq!(report.summands.len(), 1, "ell={ell}");
        let s = &report.summands[0];
        assert_eq!(s.irrep_dim, ell as usize, "summand dimension at ell={ell}");
        assert_eq!(s.multiplicity, ell as usize, "multiplicity at ell={ell}");
        // the block's Z₀⁺-character is the group-law product
        let prod = z0_product(&chi1, &chi2);
        let x = s.char_e_pow.expect("E^ell scalar on the block");
        let z = s.char_k_pow.expect("K^ell scalar on the block");
        assert!((x - prod.x).norm() < 1e-6 * (1.0 + prod.x.norm()));
        assert!((z - prod.z).norm() < 1e-6 * (1.0 + prod.z.norm()));
    }
}
