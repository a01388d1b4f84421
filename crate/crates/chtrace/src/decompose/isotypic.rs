//! Isotypic decomposition of a module action along a central element.
//!
//! The central element's eigenvalues are clustered (gap threshold with
//! adaptive retries through perturbed polynomials of the element, which
//! stay central in the image algebra); each cluster's generalized
//! eigenspace is an invariant block. Per block the multiplicity is the
//! square root of the commutant dimension of the restricted action, the
//! irreducible dimension is block-dim / multiplicity, and the restricted
//! image algebra must have dimension irrep_dim². Ambiguous clusterings
//! are reported as inconclusive, never silently merged.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};

use super::action::ModuleAction;

#[derive(Clone, Copy, Debug)]
pub struct DecompTolerances {
    /// Central element must commute with generators within this.
    pub commute: f64,
    /// Eigenvalues linked into one cluster below this (relative).
    pub cluster_link: f64,
    /// Distinct clusters must separate by this (relative).
    pub cluster_gap: f64,
    /// Block-invariance residual for restricted generators.
    pub invariance: f64,
    /// Rank decisions (commutant, closures).
    pub rank: f64,
    /// Multiplicity integrality residual.
    pub mult: f64,
    /// Gram nondegeneracy threshold for semisimplicity guards.
    pub gram: f64,
}

impl Default for DecompTolerances {
    fn default() -> Self {
        DecompTolerances {
            commute: 1e-8,
            cluster_link: 1e-8,
            cluster_gap: 1e-6,
            invariance: 1e-7,
            rank: 1e-6,
            mult: 1e-3,
            gram: 1e-6,
        }
    }
}

/// One isotypic summand.
#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub irrep_dim: usize,
    pub multiplicity: usize,
    #[serde(serialize_with = "ser_c64")]
    pub casimir_value: Complex64,
    #[serde(serialize_with = "ser_opt_c64")]
    pub char_e_pow: Option<Complex64>,
    #[serde(serialize_with = "ser_opt_c64")]
    pub char_k_pow: Option<Complex64>,
    #[serde(serialize_with = "ser_opt_c64")]
    pub char_f_pow: Option<Complex64>,
}

pub(crate) fn ser_c64<S: serde::Serializer>(
    v: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&v.re)?;
    seq.serialize_element(&v.im)?;
    seq.end()
}

fn ser_opt_c64<S: serde::Serializer>(
    v: &Option<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(z) => ser_c64(z, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub dim: usize,
    pub summands: Vec<Summand>,
    pub semisimple: bool,
    pub commutation_residual: f64,
    pub max_invariance_residual: f64,
    pub cluster_gap: f64,
}

impl DecompositionReport {
    /// Conservation: Σ irrep_dim·multiplicity over the summands.
    pub fn total_dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| s.irrep_dim * s.multiplicity)
            .sum()
    }
}

fn columns_matrix(n: usize, cols: &[Vec<C64>]) -> CMat {
    let mut q = CMat::zeros(n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            q[(i, j)] = col[i];
        }
    }
    q
}

/// Decompose the action along a central matrix. `ell` enables reading
/// the ℓ-th-power character scalars of the E/F/K generators per block.
pub fn isotypic_decompose(
    act: &ModuleAction,
    central: &CMat,
    ell: Option<u32>,
    tol: &DecompTolerances,
) -> Result<DecompositionReport> {
    let n = act.dim;
    if central.rows != n || central.cols != n {
        return Err(Error::invalid_parameter("central matrix size mismatch"));
    }
    let comm_resid = act.max_commutator_norm(central);
    let comm_scale = 1.0 + central.max_abs();
    if comm_resid
        > tol.commute
            * comm_scale
            * (1.0
                + act
                    .matrices()
                    .iter()
                    .map(|g| g.max_abs())
                    .fold(0.0, f64::max))
    {
        return Err(Error::invalid_parameter(format!(
            "central element does not commute with the action (residual {comm_resid:.3e})"
        )));
    }

    let mut last_issue = String::new();
    for attempt in 0..5u64 {
        // perturbed central element: a random polynomial in the given one
        // (degree 3), still central in the image algebra
        let working = if attempt == 0 {
            central.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC1A0 + attempt);
            let c1 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c2 = C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let c3 = C64::new(rng.gen_range(-0.25..0.25), rng.gen_range(-0.25..0.25));
            let c_sq = central.matmul(central);
            central
                .scale(c1)
                .add(&c_sq.scale(c2))
                .add(&c_sq.matmul(central).scale(c3))
        };
        let eigs = linalg::eigenvalues(&working)?;
        let scale = eigs.iter().map(|e| e.norm()).fold(1.0_f64, f64::max);
        let (means, sizes, gap) = linalg::cluster_values(&eigs, tol.cluster_link * scale);
        if means.len() > 1 && gap < tol.cluster_gap * scale {
            last_issue = format!(
                "cluster gap {gap:.3e} below threshold {:.1e}",
                tol.cluster_gap * scale
            );
            continue;
        }
        match decompose_with_clusters(act, central, &working, &means, &sizes, ell, tol) {
            Ok(mut report) => {
                report.commutation_residual = comm_resid;
                report.cluster_gap = gap;
                return Ok(report);
            }
            Err(Error::Inconclusive(msg)) => {
                last_issue = msg;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Inconclusive(format!(
        "cluster ambiguity persisted after 5 perturbed central elements: {last_issue}"
    )))
}

fn decompose_with_clusters(
    act: &ModuleAction,
    original_central: &CMat,
    working: &CMat,
    means: &[C64],
    sizes: &[usize],
    ell: Option<u32>,
    tol: &DecompTolerances,
) -> Result<DecompositionReport> {
    let n = act.dim;
    let total: usize = sizes.iter().sum();
    if total != n {
        return Err(Error::Inconclusive(format!(
            "cluster sizes sum to {total}, expected {n}"
        )));
    }
    let mut summands = Vec::with_capacity(means.len());
    let mut max_invariance = 0.0_f64;
    let mut all_diagonalizable = true;
    for (mu, &msize) in means.iter().zip(sizes) {
        // generalized eigenspace, escalating the kernel power only when
        // the eigenvalue is defective
        let shifted = {
            let mut s = working.clone();
            for i in 0..n {
                s[(i, i)] -= mu;
            }
            s
        };
        let mut block_basis: Option<Vec<Vec<C64>>> = None;
        let mut power = shifted.clone();
        for p in 1..=msize {
            // threshold anchored to the working element's scale so that a
            // numerically zero shift (single-cluster case) has full kernel
            let anchor = 1.0 + working.max_abs().max(power.max_abs());
            let ns = linalg::nullspace_abs(&power, tol.rank.min(1e-9) * anchor);
            if ns.len() == msize {
                if p > 1 {
                    all_diagonalizable = false;
                }
                block_basis = Some(ns);
                break;
            }
            if ns.len() > msize {
                return Err(Error::Inconclusive(format!(
                    "kernel dimension {} exceeds cluster size {msize}",
                    ns.len()
                )));
            }
            power = power.matmul(&shifted);
        }
        let Some(raw_basis) = block_basis else {
            return Err(Error::Inconclusive(format!(
                "could not resolve a block of size {msize} at eigenvalue {mu}"
            )));
        };
        let ortho = linalg::orthonormalize(&raw_basis, 1e-10);
        if ortho.len() != msize {
            return Err(Error::Inconclusive(
                "block basis lost rank during orthonormalization".into(),
            ));
        }
        let q = columns_matrix(n, &ortho);
        let q_adj = q.adjoint();
        // restrict the generators; blocks must be invariant
        let mut restricted: Vec<(String, CMat)> = Vec::with_capacity(act.generators.len());
        for (name, g) in &act.generators {
            let gq = g.matmul(&q);
            let coords = q_adj.matmul(&gq);
            let resid = gq.sub(&q.matmul(&coords)).max_abs() / (1.0 + g.max_abs());
            max_invariance = max_invariance.max(resid);
            if resid > tol.invariance {
                return Err(Error::Inconclusive(format!(
                    "block not invariant under {name} (residual {resid:.3e})"
                )));
            }
            restricted.push((name.clone(), coords));
        }
        // commutant dimension of the restricted action
        let m2 = msize * msize;
        let id_m = CMat::identity(msize);
        let mut stack = CMat::zeros(m2 * restricted.len(), m2);
        for (gi, (_, g)) in restricted.iter().enumerate() {
            let lhs = g.kron(&id_m).sub(&id_m.kron(&g.transpose()));
            for r in 0..m2 {
                for c in 0..m2 {
                    stack[(gi * m2 + r, c)] = lhs[(r, c)];
                }
            }
        }
        let stack_anchor = 1.0
            + restricted
                .iter()
                .map(|(_, g)| g.max_abs())
                .fold(0.0, f64::max);
        let commutant_dim = m2 - linalg::rank_abs(&stack, tol.rank * stack_anchor);
        let mult_f = (commutant_dim as f64).sqrt();
        let mult = mult_f.round() as usize;
        if (mult_f - mult as f64).abs() > tol.mult || mult == 0 || msize % mult != 0 {
            return Err(Error::DecompositionFailed(format!(
                "non-integral multiplicity sqrt({commutant_dim}) on a block of size {msize}"
            )));
        }
        let irrep_dim = msize / mult;
        // restricted image algebra must be a full matrix algebra
        let closure = linalg::matrix_algebra_closure(
            msize,
            &restricted
                .iter()
                .map(|(_, g)| g.clone())
                .collect::<Vec<_>>(),
            1e-9,
        );
        if closure.len() != irrep_dim * irrep_dim {
            return Err(Error::DecompositionFailed(format!(
                "restricted image algebra has dimension {}, expected {}",
                closure.len(),
                irrep_dim * irrep_dim
            )));
        }
        // Casimir value from the original central element on this block
        let c_restricted = q_adj.matmul(&original_central.matmul(&q));
        let (casimir_value, _) = c_restricted.scalar_part();
        // character scalars of ℓ-th powers where generators are present
        let restricted_action = ModuleAction {
            dim: msize,
            generators: restricted,
            algebra: act.algebra,
        };
        let (mut e_pow, mut k_pow, mut f_pow) = (None, None, None);
        if let Some(l) = ell {
            e_pow = restricted_action.power_scalar("E", l, 1e-6);
            k_pow = restricted_action.power_scalar("K", l, 1e-6);
            f_pow = restricted_action.power_scalar("F", l, 1e-6);
        }
        summands.push(Summand {
            irrep_dim,
            multiplicity: mult,
            casimir_value,
            char_e_pow: e_pow,
            char_k_pow: k_pow,
            char_f_pow: f_pow,
        });
    }
    summands.sort_by(|a, b| {
        a.casimir_value
            .re
            .partial_cmp(&b.casimir_value.re)
            .unwrap()
            .then(a.casimir_value.im.partial_cmp(&b.casimir_value.im).unwrap())
    });
    let report = DecompositionReport {
        dim: n,
        summands,
        semisimple: all_diagonalizable,
        commutation_residual: 0.0,
        max_invariance_residual: max_invariance,
        cluster_gap: 0.0,
    };
    if report.total_dim() != n {
        return Err(Error::DecompositionFailed(format!(
            "summand dimensions account for {} of {n}",
            report.total_dim()
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uq_sl2::{
        build_cyclic_rep, casimir_matrix_of_action, random_generic_char, tensor_action,
    };

    #[test]
    fn single_rep_is_one_summand() {
        let ell = 5u32;
        let rep = build_cyclic_rep(ell, &random_generic_char(ell, 3), 2).unwrap();
        let act = rep.module_action();
        let c = casimir_matrix_of_action(&act, ell).unwrap();
        let report = isotypic_decompose(&act, &c, Some(ell), &DecompTolerances::default()).unwrap();
        assert_eq!(report.summands.len(), 1);
        assert_eq!(report.summands[0].irrep_dim, 5);
        assert_eq!(report.summands[0].multiplicity, 1);
        assert!(report.semisimple);
        assert!((report.summands[0].casimir_value - rep.casimir_value).norm() < 1e-7);
        let x = report.summands[0].char_e_pow.unwrap();
        assert!((x - rep.chi.x).norm() < 1e-6);
    }

    #[test]
    fn doubled_rep_has_multiplicity_two() {
        let ell = 3u32;
        let rep = build_cyclic_rep(ell, &random_generic_char(ell, 8), 0).unwrap();
        let act = rep.module_action().direct_sum_power(2);
        let c = casimir_matrix_of_action(&act, ell).unwrap();
        let report = isotypic_decompose(&act, &c, Some(ell), &DecompTolerances::default()).unwrap();
        assert_eq!(report.summands.len(), 1);
        assert_eq!(report.summands[0].irrep_dim, 3);
        assert_eq!(report.summands[0].multiplicity, 2);
        assert_eq!(report.total_dim(), 6);
    }

    #[test]
    fn tensor_of_generic_pair_splits_into_ell_summands() {
        let ell = 3u32;
        let r1 = build_cyclic_rep(ell, &random_generic_char(ell, 21), 0).unwrap();
        let r2 = build_cyclic_rep(ell, &random_generic_char(ell, 22), 2).unwrap();
        let act = tensor_action(&r1, &r2).unwrap();
        let c = casimir_matrix_of_action(&act, ell).unwrap();
        let report = isotypic_decompose(&act, &c, Some(ell), &DecompTolerances::default()).unwrap();
        assert_eq!(report.summands.len(), 3);
        for s in &report.summands {
            assert_eq!(s.irrep_dim, 3);
            assert_eq!(s.multiplicity, 1);
        }
        assert!(report.semisimple);
    }

    #[test]
    fn non_commuting_central_rejected() {
        let ell = 3u32;
        let rep = build_cyclic_rep(ell, &random_generic_char(ell, 30), 0).unwrap();
        let act = rep.module_action();
        // E itself is not central
        let e = act.generator("E").unwrap().clone();
        assert!(matches!(
            isotypic_decompose(&act, &e, Some(ell), &DecompTolerances::default()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn conjugated_action_yields_same_summand_shape() {
        use rand::{Rng, SeedableRng};
        let ell = 3u32;
        let r1 = build_cyclic_rep(ell, &random_generic_char(ell, 33), 1).unwrap();
        let r2 = build_cyclic_rep(ell, &random_generic_char(ell, 34), 0).unwrap();
        let act = tensor_action(&r1, &r2).unwrap();
        let c = casimir_matrix_of_action(&act, ell).unwrap();
        let base = isotypic_decompose(&act, &c, Some(ell), &DecompTolerances::default()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(91);
        let g = CMat::from_fn(9, 9, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let g_inv = linalg::inverse(&g, 1e-12).unwrap();
        let conj_act = act.conjugate(&g, &g_inv);
        let conj_c = g.matmul(&c).matmul(&g_inv);
        let tol = DecompTolerances {
            commute: 1e-6,
            invariance: 1e-5,
            ..Default::default()
        };
        let conj = isotypic_decompose(&conj_act, &conj_c, Some(ell), &tol).unwrap();
        assert_eq!(base.summands.len(), conj.summands.len());
        for (a, b) in base.summands.iter().zip(&conj.summands) {
            assert_eq!(a.irrep_dim, b.irrep_dim);
            assert_eq!(a.multiplicity, b.multiplicity);
            assert!((a.casimir_value - b.casimir_value).norm() < 1e-5);
        }
    }
}
