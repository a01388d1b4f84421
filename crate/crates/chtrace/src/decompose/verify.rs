//! Seeded verification harnesses for the tensor (Clebsch-Gordan),
//! branching, and rescaled-restriction statements in type A₁, compared
//! against the root-datum predictions.
//!
//! Each trial first runs a genericity guard mirroring the unramified-
//! locus hypothesis: the fibers over both characters and their product
//! must consist of ℓ separated Casimir values, and the image algebras at
//! the three points must have nondegenerate trace form. Guarded-out
//! trials are reported as inconclusive, never as failures.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{RootDatum, TypeLetter};
use crate::trace_algebra::{block_decompose, BlockSpectrum};
use crate::uq_sl2::{
    borel_restriction, build_cyclic_rep, candidate_casimirs, casimir_matrix_of_action,
    random_generic_char, tensor_action, z0_product, CentralCharZ0,
};

use super::action::ModuleAction;
use super::image::{image_algebra, random_central_element, semisimplicity_check_with};
use super::isotypic::{isotypic_decompose, DecompTolerances, DecompositionReport};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum TrialOutcome {
    Pass,
    Inconclusive(String),
    Fail(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub summand_count: Option<usize>,
    pub report: Option<DecompositionReport>,
}

/// Expected integer outputs for the A₁ theorems at this ℓ.
#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub ell: u32,
    pub tensor_summands: usize,
    pub tensor_mult: usize,
    pub irrep_dim: usize,
    pub branch_count: usize,
    pub branch_mult: usize,
    pub branch_dim: usize,
}

impl Expected {
    pub fn for_ell(ell: u32) -> Result<Expected> {
        let rd = RootDatum::build(TypeLetter::A, 1)?;
        let table = rd.predict(ell)?;
        let small = |p: &crate::root_data::Power| -> usize {
            // A₁ exponents are tiny; the conversion cannot overflow
            p.value.to_string().parse().unwrap()
        };
        Ok(Expected {
            ell,
            tensor_summands: small(&table.deg_z_over_z0),
            tensor_mult: small(&table.tensor_mult),
            irrep_dim: small(&table.degree_u),
            branch_count: small(&table.branch_count),
            branch_mult: small(&table.branch_mult),
            branch_dim: small(&table.degree_borel),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub kind: String,
    pub ell: u32,
    /// Rescale factor for the rescaled-restriction harness.
    pub rescale_r: Option<usize>,
    pub expected: Expected,
    pub trials: Vec<TrialReport>,
    pub pass_count: usize,
    pub fail_count: usize,
    pub inconclusive_count: usize,
}

impl VerdictReport {
    /// Assemble a verdict from independently produced trials (sorted by
    /// seed, so parallel production is order-independent).
    pub fn from_trials(kind: &str, ell: u32, expected: Expected, trials: Vec<TrialReport>) -> Self {
        Self::tally(kind, ell, expected, trials)
    }

    fn tally(kind: &str, ell: u32, expected: Expected, mut trials: Vec<TrialReport>) -> Self {
        trials.sort_by_key(|t| t.seed);
        let pass_count = trials
            .iter()
            .filter(|t| t.outcome == TrialOutcome::Pass)
            .count();
        let fail_count = trials
            .iter()
            .filter(|t| matches!(t.outcome, TrialOutcome::Fail(_)))
            .count();
        let inconclusive_count = trials.len() - pass_count - fail_count;
        VerdictReport {
            kind: kind.into(),
            ell,
            rescale_r: None,
            expected,
            trials,
            pass_count,
            fail_count,
            inconclusive_count,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.fail_count == 0 && self.inconclusive_count == 0
    }

    pub fn no_failures(&self) -> bool {
        self.fail_count == 0
    }
}

fn trial_seed(seed: u64, index: usize) -> u64 {
    // splitmix-style stepping keeps per-trial seeds well separated
    let mut z = seed.wrapping_add(0x9E3779B97F4A7C15u64.wrapping_mul(index as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Fiber separation at a character: ℓ candidate Casimir values, pairwise
/// farther apart than the cluster gap.
fn fiber_separated(ell: u32, chi: &CentralCharZ0, gap: f64) -> Result<bool> {
    let casimirs = candidate_casimirs(ell, chi)?;
    if casimirs.len() != ell as usize {
        return Ok(false);
    }
    let scale = casimirs.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    for i in 0..casimirs.len() {
        for j in i + 1..casimirs.len() {
            if (casimirs[i] - casimirs[j]).norm() < gap * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nondegenerate trace form of the image algebra of every branch rep at
/// the character (the discriminant probe at that point of V(Z₀)).
fn point_unramified(ell: u32, chi: &CentralCharZ0, tol: &DecompTolerances) -> Result<bool> {
    if !fiber_separated(ell, chi, tol.cluster_gap)? {
        return Ok(false);
    }
    for branch in 0..ell as usize {
        match build_cyclic_rep(ell, chi, branch) {
            Ok(rep) => {
                if !semisimplicity_check_with(&rep.module_action(), tol.gram) {
                    return Ok(false);
                }
            }
            Err(Error::ConstructionFailed(_)) | Err(Error::UnsupportedCharacter(_)) => {
                return Ok(false)
            }
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Clebsch-Gordan verification: tensor two generic ℓ-dimensional irreps,
/// decompose, and compare against ℓ summands of dimension ℓ with the
/// predicted common multiplicity and the group-law Z₀-character.
pub fn verify_clebsch_gordan(ell: u32, seed: u64, trials: usize) -> Result<VerdictReport> {
    verify_clebsch_gordan_with(ell, seed, trials, &DecompTolerances::default())
}

pub fn verify_clebsch_gordan_with(
    ell: u32,
    seed: u64,
    trials: usize,
    tol: &DecompTolerances,
) -> Result<VerdictReport> {
    let expected = Expected::for_ell(ell)?;
    let mut reports = Vec::with_capacity(trials);
    for index in 0..trials {
        let ts = trial_seed(seed, index);
        let outcome = cg_trial(ell, ts, &expected, tol);
        reports.push(pack_trial(index, ts, outcome));
    }
    Ok(VerdictReport::tally(
        "clebsch-gordan",
        ell,
        expected,
        reports,
    ))
}

type TrialResult = Result<(TrialOutcome, Option<DecompositionReport>)>;

fn pack_trial(index: usize, seed: u64, outcome: TrialResult) -> TrialReport {
    match outcome {
        Ok((outcome, report)) => TrialReport {
            index,
            seed,
            summand_count: report.as_ref().map(|r| r.summands.len()),
            report,
            outcome,
        },
        Err(Error::Inconclusive(msg)) => TrialReport {
            index,
            seed,
            outcome: TrialOutcome::Inconclusive(msg),
            summand_count: None,
            report: None,
        },
        Err(e) => TrialReport {
            index,
            seed,
            outcome: TrialOutcome::Fail(e.to_string()),
            summand_count: None,
            report: None,
        },
    }
}

/// One Clebsch-Gordan trial on explicitly given characters and branches;
/// exposed so adversarial (non-generic) inputs can be driven directly.
pub fn cg_trial_with_chars(
    ell: u32,
    chi1: &CentralCharZ0,
    chi2: &CentralCharZ0,
    b1: usize,
    b2: usize,
    expected: &Expected,
    tol: &DecompTolerances,
) -> TrialResult {
    let prod = z0_product(chi1, chi2);
    for (chi, what) in [
        (chi1, "left factor"),
        (chi2, "right factor"),
        (&prod, "product"),
    ] {
        match point_unramified(ell, chi, tol) {
            Ok(true) => {}
            Ok(false) => {
                return Ok((
                    TrialOutcome::Inconclusive(format!("non-generic: {what} point is ramified")),
                    None,
                ))
            }
            Err(Error::UnsupportedCharacter(_)) => {
                return Ok((
                    TrialOutcome::Inconclusive(format!(
                        "non-generic: {what} character is degenerate"
                    )),
                    None,
                ))
            }
            Err(e) => return Err(e),
        }
    }
    let r1 = build_cyclic_rep(ell, chi1, b1)?;
    let r2 = build_cyclic_rep(ell, chi2, b2)?;
    let act = tensor_action(&r1, &r2)?;
    let casimir = casimir_matrix_of_action(&act, ell)?;
    let report = match isotypic_decompose(&act, &casimir, Some(ell), tol) {
        Ok(r) => r,
        Err(Error::Inconclusive(msg)) => {
            return Ok((TrialOutcome::Inconclusive(msg), None));
        }
        Err(e) => return Err(e),
    };
    let mut problems = Vec::new();
    if report.summands.len() != expected.tensor_summands {
        problems.push(format!(
            "summand count {} != {}",
            report.summands.len(),
            expected.tensor_summands
        ));
    }
    for (i, s) in report.summands.iter().enumerate() {
        if s.irrep_dim != expected.irrep_dim {
            problems.push(format!(
                "summand {i} dim {} != {}",
                s.irrep_dim, expected.irrep_dim
            ));
        }
        if s.multiplicity != expected.tensor_mult {
            problems.push(format!(
                "summand {i} multiplicity {} != {}",
                s.multiplicity, expected.tensor_mult
            ));
        }
        let char_tol = 1e-6;
        let close = |a: Option<Complex64>, b: Complex64| -> bool {
            a.map(|v| (v - b).norm() <= char_tol * (1.0 + b.norm()))
                .unwrap_or(false)
        };
        if !close(s.char_e_pow, prod.x)
            || !close(s.char_k_pow, prod.z)
            || !close(s.char_f_pow, prod.y)
        {
            problems.push(format!(
                "summand {i} Z0-character differs from the group-law product"
            ));
        }
    }
    // counting identity: (number of summands)·(common multiplicity) = ℓ
    let mult = report.summands.first().map(|s| s.multiplicity).unwrap_or(0);
    if report.summands.len() * mult != ell as usize {
        problems.push(format!(
            "counting identity violated: {} summands x mult {mult} != {ell}",
            report.summands.len()
        ));
    }
    if problems.is_empty() {
        Ok((TrialOutcome::Pass, Some(report)))
    } else {
        Ok((TrialOutcome::Fail(problems.join("; ")), Some(report)))
    }
}

/// One fully packaged Clebsch-Gordan trial; parallel drivers can map
/// this over indices and assemble with [`VerdictReport::from_trials`].
pub fn cg_trial_report(
    ell: u32,
    index: usize,
    seed: u64,
    expected: &Expected,
    tol: &DecompTolerances,
) -> TrialReport {
    let ts = trial_seed(seed, index);
    pack_trial(index, ts, cg_trial(ell, ts, expected, tol))
}

/// One fully packaged branching trial.
pub fn branch_trial_report(
    ell: u32,
    index: usize,
    seed: u64,
    expected: &Expected,
    tol: &DecompTolerances,
) -> TrialReport {
    let ts = trial_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(ts);
    let chi = random_generic_char(ell, rng.gen());
    let branch = rng.gen_range(0..ell as usize);
    pack_trial(
        index,
        ts,
        branch_trial(ell, &chi, branch, ts, expected, tol),
    )
}

fn cg_trial(ell: u32, ts: u64, expected: &Expected, tol: &DecompTolerances) -> TrialResult {
    let mut rng = ChaCha8Rng::seed_from_u64(ts);
    let chi1 = random_generic_char(ell, rng.gen());
    let chi2 = random_generic_char(ell, rng.gen());
    let b1 = rng.gen_range(0..ell as usize);
    let b2 = rng.gen_range(0..ell as usize);
    cg_trial_with_chars(ell, &chi1, &chi2, b1, b2, expected, tol)
}

/// Branching verification: restrict a generic irrep to the Borel and
/// compare the decomposition with the branching predictions (for A₁ a
/// single irreducible summand of dimension ℓ).
pub fn verify_branching(ell: u32, seed: u64, trials: usize) -> Result<VerdictReport> {
    verify_branching_with(ell, seed, trials, &DecompTolerances::default())
}

pub fn verify_branching_with(
    ell: u32,
    seed: u64,
    trials: usize,
    tol: &DecompTolerances,
) -> Result<VerdictReport> {
    let expected = Expected::for_ell(ell)?;
    let mut reports = Vec::with_capacity(trials);
    for index in 0..trials {
        let ts = trial_seed(seed, index);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let chi = random_generic_char(ell, rng.gen());
        let branch = rng.gen_range(0..ell as usize);
        let outcome = branch_trial(ell, &chi, branch, ts, &expected, tol);
        reports.push(pack_trial(index, ts, outcome));
    }
    Ok(VerdictReport::tally("branching", ell, expected, reports))
}

/// One branching trial on an explicit character (degenerate characters
/// with x = 0 are exercised directly by tests).
pub fn branch_trial(
    ell: u32,
    chi: &CentralCharZ0,
    branch: usize,
    ts: u64,
    expected: &Expected,
    tol: &DecompTolerances,
) -> TrialResult {
    match point_unramified(ell, chi, tol) {
        Ok(true) => {}
        Ok(false) => {
            return Ok((
                TrialOutcome::Inconclusive("non-generic: base point is ramified".into()),
                None,
            ))
        }
        Err(Error::UnsupportedCharacter(_)) => {
            return Ok((
                TrialOutcome::Inconclusive("non-generic: degenerate character".into()),
                None,
            ))
        }
        Err(e) => return Err(e),
    }
    let rep = build_cyclic_rep(ell, chi, branch)?;
    let act = borel_restriction(&rep);
    if !semisimplicity_check_with(&act, tol.gram) {
        return Ok((
            TrialOutcome::Inconclusive(
                "non-generic: Borel image algebra has degenerate trace form".into(),
            ),
            None,
        ));
    }
    let central = random_central_element(&act, ts)?;
    let report = match isotypic_decompose(&act, &central, Some(ell), tol) {
        Ok(r) => r,
        Err(Error::Inconclusive(msg)) => return Ok((TrialOutcome::Inconclusive(msg), None)),
        Err(e) => return Err(e),
    };
    let mut problems = Vec::new();
    if report.summands.len() != expected.branch_count {
        problems.push(format!(
            "summand count {} != {}",
            report.summands.len(),
            expected.branch_count
        ));
    }
    for (i, s) in report.summands.iter().enumerate() {
        if s.irrep_dim != expected.branch_dim {
            problems.push(format!(
                "summand {i} dim {} != {}",
                s.irrep_dim, expected.branch_dim
            ));
        }
        if s.multiplicity != expected.branch_mult {
            problems.push(format!(
                "summand {i} multiplicity {} != {}",
                s.multiplicity, expected.branch_mult
            ));
        }
        let char_tol = 1e-6;
        let close = |a: Option<Complex64>, b: Complex64| -> bool {
            a.map(|v| (v - b).norm() <= char_tol * (1.0 + b.norm()))
                .unwrap_or(false)
        };
        // Z₀⁺-character of the block must restrict the rep's character
        if !close(s.char_e_pow, chi.x) || !close(s.char_k_pow, chi.z) {
            problems.push(format!(
                "summand {i} Z0+-character differs from the restricted character"
            ));
        }
    }
    if problems.is_empty() {
        Ok((TrialOutcome::Pass, Some(report)))
    } else {
        Ok((TrialOutcome::Fail(problems.join("; ")), Some(report)))
    }
}

/// Restriction with rescaled trace: the r-fold direct sum of a generic
/// irrep decomposes as one summand of multiplicity r, and the image
/// algebra carries block spectrum {(ℓ, r)} for the trace of degree r·ℓ.
pub fn verify_rescaled_restriction(ell: u32, r: usize, seed: u64) -> Result<VerdictReport> {
    verify_rescaled_restriction_with(ell, r, seed, &DecompTolerances::default())
}

pub fn verify_rescaled_restriction_with(
    ell: u32,
    r: usize,
    seed: u64,
    tol: &DecompTolerances,
) -> Result<VerdictReport> {
    if r == 0 || r > 3 {
        return Err(Error::invalid_parameter(
            "rescale factor r must be in 1..=3",
        ));
    }
    let expected = Expected::for_ell(ell)?;
    let ts = trial_seed(seed, 0);
    let outcome = rescale_trial(ell, r, ts, tol);
    let trial = pack_trial(0, ts, outcome);
    let mut verdict = VerdictReport::tally("rescaled-restriction", ell, expected, vec![trial]);
    verdict.rescale_r = Some(r);
    Ok(verdict)
}

fn rescale_trial(ell: u32, r: usize, ts: u64, tol: &DecompTolerances) -> TrialResult {
    let mut rng = ChaCha8Rng::seed_from_u64(ts);
    let chi = random_generic_char(ell, rng.gen());
    let branch = rng.gen_range(0..ell as usize);
    match point_unramified(ell, &chi, tol) {
        Ok(true) => {}
        Ok(false) => {
            return Ok((
                TrialOutcome::Inconclusive("non-generic: base point is ramified".into()),
                None,
            ))
        }
        Err(e) => return Err(e),
    }
    let rep = build_cyclic_rep(ell, &chi, branch)?;
    let act: ModuleAction = rep.module_action().direct_sum_power(r);
    let casimir = casimir_matrix_of_action(&act, ell)?;
    let report = match isotypic_decompose(&act, &casimir, Some(ell), tol) {
        Ok(rep) => rep,
        Err(Error::Inconclusive(msg)) => return Ok((TrialOutcome::Inconclusive(msg), None)),
        Err(e) => return Err(e),
    };
    let mut problems = Vec::new();
    if report.summands.len() != 1 {
        problems.push(format!(
            "expected one summand, got {}",
            report.summands.len()
        ));
    } else {
        let s = &report.summands[0];
        if s.irrep_dim != ell as usize || s.multiplicity != r {
            problems.push(format!(
                "got (dim, mult) = ({}, {}), expected ({ell}, {r})",
                s.irrep_dim, s.multiplicity
            ));
        }
    }
    // cross-check through the trace-algebra engine: the image algebra of
    // the doubled action, with the matrix trace of degree r·ℓ, must have
    // block spectrum {(ℓ, r)}
    let alg = image_algebra(&act)?;
    let spectrum = block_decompose(&alg)?;
    let want = BlockSpectrum {
        blocks: vec![(ell as usize, r)],
    };
    if spectrum != want {
        problems.push(format!("block spectrum {spectrum} != {want}"));
    }
    if problems.is_empty() {
        Ok((TrialOutcome::Pass, Some(report)))
    } else {
        Ok((TrialOutcome::Fail(problems.join("; ")), Some(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn cg_ell3_small_run() {
        let verdict = verify_clebsch_gordan(3, 1, 5).unwrap();
        assert_eq!(verdict.pass_count, 5, "{:?}", verdict.trials);
    }

    #[test]
    fn branching_ell3_small_run() {
        let verdict = verify_branching(3, 1, 5).unwrap();
        assert_eq!(verdict.pass_count, 5, "{:?}", verdict.trials);
    }

    #[test]
    fn rescaled_restriction_r2() {
        let verdict = verify_rescaled_restriction(3, 2, 7).unwrap();
        assert!(verdict.all_passed(), "{:?}", verdict.trials);
        let verdict = verify_rescaled_restriction(3, 1, 7).unwrap();
        assert!(verdict.all_passed());
    }

    #[test]
    fn adversarial_colliding_fiber_is_inconclusive() {
        // χ₁ = χ₂ = (1/3, 1, 1/9): the product (2/3, 1, 2/9) has
        // x·y = 4/27, a double root of t²(t+1) − xy at ℓ = 3, so the
        // fiber over the product collides and the guard must flag the
        // pair instead of failing.
        let c = |re: f64| Complex64::new(re, 0.0);
        let chi = CentralCharZ0::new(c(1.0 / 3.0), c(1.0), c(1.0 / 9.0)).unwrap();
        let expected = Expected::for_ell(3).unwrap();
        let (outcome, _) =
            cg_trial_with_chars(3, &chi, &chi, 0, 0, &expected, &DecompTolerances::default())
                .unwrap();
        match outcome {
            TrialOutcome::Inconclusive(msg) => {
                assert!(msg.contains("non-generic"), "unexpected message {msg}")
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_branching_character_is_inconclusive() {
        // x = 0 forces E^ℓ = 0: E is nilpotent in the rep, the Borel
        // image algebra picks up a radical, and the verdict must be
        // non-generic rather than a failure.
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let chi = CentralCharZ0::new(c(0.0, 0.0), c(0.9, 0.2), c(1.1, -0.3)).unwrap();
        let expected = Expected::for_ell(3).unwrap();
        let (outcome, _) =
            branch_trial(3, &chi, 0, 99, &expected, &DecompTolerances::default()).unwrap();
        match outcome {
            TrialOutcome::Inconclusive(msg) => {
                assert!(msg.contains("non-generic"), "unexpected message {msg}")
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn determinism_of_reports() {
        let a = verify_clebsch_gordan(3, 5, 3).unwrap();
        let b = verify_clebsch_gordan(3, 5, 3).unwrap();
        assert_eq!(a.pass_count, b.pass_count);
        for (x, y) in a.trials.iter().zip(&b.trials) {
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.outcome, y.outcome);
            assert_eq!(x.summand_count, y.summand_count);
        }
    }
}
