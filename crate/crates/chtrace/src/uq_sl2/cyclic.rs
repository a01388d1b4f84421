//! ℓ-dimensional cyclic representations of U_ε(sl₂) with prescribed
//! Z₀-character.
//!
//! On the basis v_0..v_{ℓ−1}: K v_j = λ ε^{−2j} v_j, F is the cyclic
//! lowering operator with F v_{ℓ−1} = b v_0, and E v_j = c_j v_{j−1}
//! with E v_0 = a v_{ℓ−1}. The commutation relation fixes
//! c_j = t + s_j where s_j = Σ_{i<j} (λε^{−2i} − λ⁻¹ε^{2i})/(ε − ε⁻¹)
//! and t = a·b, so prescribing χ(E^ℓ) = x reduces to the degree-ℓ
//! polynomial ∏_{j=0}^{ℓ−1}(t + s_j) = x·y. Each root is one fiber
//! point; branches are indexed by sorting the resulting Casimir values.

use num_complex::Complex64;

use crate::decompose::{ActingAlgebra, ModuleAction};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

use super::charz0::CentralCharZ0;

pub fn eps_complex(ell: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU / ell as f64)
}

/// Relation/scalar tolerances for representation checks.
#[derive(Clone, Copy, Debug)]
pub struct RepTolerances {
    pub relation: f64,
    pub scalar: f64,
}

impl Default for RepTolerances {
    fn default() -> Self {
        RepTolerances {
            relation: 1e-9,
            scalar: 1e-8,
        }
    }
}

/// A concrete ℓ-dimensional representation with cached character data.
#[derive(Clone, Debug)]
pub struct CyclicRep {
    pub ell: u32,
    pub e: CMat,
    pub f: CMat,
    pub k: CMat,
    pub k_inv: CMat,
    pub lambda: Complex64,
    /// Wrap-around entry of E (E v_0 = a·v_{ℓ−1}).
    pub a_param: Complex64,
    /// Wrap-around entry of F (F v_{ℓ−1} = b·v_0).
    pub b_param: Complex64,
    pub chi: CentralCharZ0,
    pub casimir_value: Complex64,
    pub branch: usize,
}

struct Candidate {
    lambda: Complex64,
    t: Complex64,
    a: Complex64,
    b: Complex64,
    casimir: Complex64,
}

/// Casimir offset (λε + λ⁻¹ε⁻¹)/(ε − ε⁻¹)² coming from the K-part.
fn kappa(lambda: Complex64, ell: u32) -> Complex64 {
    let eps = eps_complex(ell);
    let denom = eps - 1.0 / eps;
    (lambda * eps + 1.0 / (lambda * eps)) / (denom * denom)
}

/// Partial sums s_j of the ladder increments for a given λ.
fn ladder_sums(lambda: Complex64, ell: u32) -> Vec<Complex64> {
    let eps = eps_complex(ell);
    let denom = eps - 1.0 / eps;
    let mut sums = Vec::with_capacity(ell as usize);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..ell {
        sums.push(acc);
        let w = eps.powi(-2 * j as i32);
        let d_j = (lambda * w - 1.0 / (lambda * w)) / denom;
        acc += d_j;
    }
    sums
}

fn principal_root(z: Complex64, ell: u32) -> Complex64 {
    Complex64::from_polar(z.norm().powf(1.0 / ell as f64), z.arg() / ell as f64)
}

/// Monic polynomial roots via the companion matrix; coeffs[k] is the
/// coefficient of t^k, with the leading coefficient 1 implicit.
fn monic_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len();
    let mut companion = CMat::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i];
    }
    linalg::eigenvalues(&companion)
}

fn fiber_candidates(ell: u32, chi: &CentralCharZ0) -> Result<Vec<Candidate>> {
    if chi.z.norm() == 0.0 {
        return Err(Error::invalid_parameter("character needs z != 0"));
    }
    if chi.x.norm() == 0.0 && chi.y.norm() == 0.0 {
        return Err(Error::UnsupportedCharacter(
            "cyclic construction needs x != 0 or y != 0".into(),
        ));
    }
    let mut cands: Vec<Candidate> = Vec::new();
    if chi.y.norm() != 0.0 {
        // fixed principal λ, t runs over the roots of ∏(t + s_j) − x·y
        let lambda = principal_root(chi.z, ell);
        let sums = ladder_sums(lambda, ell);
        // expand ∏_{j}(t + s_j)
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for s in &sums {
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] += c * s;
            }
            poly = next;
        }
        // monic of degree ℓ: subtract x·y from the constant term
        poly[0] -= chi.x * chi.y;
        let coeffs: Vec<Complex64> = poly[..ell as usize].to_vec();
        for t in monic_roots(&coeffs)? {
            cands.push(Candidate {
                lambda,
                t,
                a: t / chi.y,
                b: chi.y,
                casimir: t + kappa(lambda, ell),
            });
        }
    } else {
        // y = 0, x ≠ 0: t = 0 forced; enumerate the ℓ-th roots of z
        let base = principal_root(chi.z, ell);
        let eps = eps_complex(ell);
        for k in 0..ell {
            let lambda = base * eps.powu(k);
            let sums = ladder_sums(lambda, ell);
            let prod: Complex64 = sums[1..].iter().product();
            if prod.norm() < 1e-12 {
                return Err(Error::ConstructionFailed(
                    "degenerate ladder for y = 0 character".into(),
                ));
            }
            cands.push(Candidate {
                lambda,
                t: Complex64::new(0.0, 0.0),
                a: chi.x / prod,
                b: Complex64::new(0.0, 0.0),
                casimir: kappa(lambda, ell),
            });
        }
    }
    cands.sort_by(|p, q| {
        p.casimir
            .re
            .partial_cmp(&q.casimir.re)
            .unwrap()
            .then(p.casimir.im.partial_cmp(&q.casimir.im).unwrap())
    });
    Ok(cands)
}

/// The ℓ candidate Casimir values over a Z₀-character, sorted by
/// (re, im); the fiber of the central-character projection.
pub fn candidate_casimirs(ell: u32, chi: &CentralCharZ0) -> Result<Vec<Complex64>> {
    Ok(fiber_candidates(ell, chi)?
        .into_iter()
        .map(|c| c.casimir)
        .collect())
}

fn build_matrices(ell: u32, cand: &Candidate) -> (CMat, CMat, CMat, CMat) {
    let n = ell as usize;
    let eps = eps_complex(ell);
    let sums = ladder_sums(cand.lambda, ell);
    let mut k = CMat::zeros(n, n);
    let mut k_inv = CMat::zeros(n, n);
    for j in 0..n {
        let kv = cand.lambda * eps.powi(-2 * j as i32);
        k[(j, j)] = kv;
        k_inv[(j, j)] = 1.0 / kv;
    }
    let mut f = CMat::zeros(n, n);
    for j in 0..n - 1 {
        f[(j + 1, j)] = Complex64::new(1.0, 0.0);
    }
    f[(0, n - 1)] = cand.b;
    let mut e = CMat::zeros(n, n);
    for j in 1..n {
        e[(j - 1, j)] = cand.t + sums[j];
    }
    e[(n - 1, 0)] = cand.a;
    (e, f, k, k_inv)
}

fn relation_residuals(ell: u32, e: &CMat, f: &CMat, k: &CMat, k_inv: &CMat) -> f64 {
    let eps = eps_complex(ell);
    let eps2 = eps * eps;
    let dim = k.rows;
    let mut worst = 0.0_f64;
    let scale_ke = 1.0 + k.max_abs() * e.max_abs();
    worst = worst.max(k.matmul(e).sub(&e.matmul(k).scale(eps2)).max_abs() / scale_ke);
    let scale_kf = 1.0 + k.max_abs() * f.max_abs();
    worst = worst.max(k.matmul(f).sub(&f.matmul(k).scale(1.0 / eps2)).max_abs() / scale_kf);
    let denom = eps - 1.0 / eps;
    let rhs = k.sub(k_inv).scale(1.0 / denom);
    let scale_ef = 1.0 + e.max_abs() * f.max_abs() + rhs.max_abs();
    worst = worst.max(e.matmul(f).sub(&f.matmul(e)).sub(&rhs).max_abs() / scale_ef);
    worst = worst.max(k.matmul(k_inv).sub(&CMat::identity(dim)).max_abs());
    worst
}

impl CyclicRep {
    /// Wrap explicit matrices as a representation, verifying the
    /// defining relations and the scalarness of the ℓ-th powers.
    pub fn from_matrices(ell: u32, e: CMat, f: CMat, k: CMat, tol: RepTolerances) -> Result<Self> {
        let n = ell as usize;
        if e.rows != n || f.rows != n || k.rows != n {
            return Err(Error::InvalidRep(format!("matrices must be {n}x{n}")));
        }
        let k_inv =
            linalg::inverse(&k, 1e-12).map_err(|_| Error::InvalidRep("K is singular".into()))?;
        let resid = relation_residuals(ell, &e, &f, &k, &k_inv);
        if resid > tol.relation {
            return Err(Error::InvalidRep(format!(
                "defining relations violated, residual {resid:.3e}"
            )));
        }
        let (chi, casimir_value) = character_from_matrices(ell, &e, &f, &k, tol.scalar)?;
        let lambda = k[(0, 0)];
        let a_param = e[(n - 1, 0)];
        let b_param = f[(0, n - 1)];
        Ok(CyclicRep {
            ell,
            e,
            f,
            k,
            k_inv,
            lambda,
            a_param,
            b_param,
            chi,
            casimir_value,
            branch: 0,
        })
    }

    /// The representation as a module action of the full quantum group.
    pub fn module_action(&self) -> ModuleAction {
        ModuleAction::new(
            vec![
                ("E".into(), self.e.clone()),
                ("F".into(), self.f.clone()),
                ("K".into(), self.k.clone()),
                ("Kinv".into(), self.k_inv.clone()),
            ],
            ActingAlgebra::FullQuantumGroup,
        )
        .expect("shapes agree")
    }
}

/// Construct the ℓ-dimensional cyclic representation with the given
/// character; `branch` in 0..ℓ selects a fiber point (candidates sorted
/// by Casimir value).
pub fn build_cyclic_rep(ell: u32, chi: &CentralCharZ0, branch: usize) -> Result<CyclicRep> {
    build_cyclic_rep_with(ell, chi, branch, RepTolerances::default())
}

pub fn build_cyclic_rep_with(
    ell: u32,
    chi: &CentralCharZ0,
    branch: usize,
    tol: RepTolerances,
) -> Result<CyclicRep> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::invalid_parameter(format!(
            "ell must be odd and >= 3, got {ell}"
        )));
    }
    let cands = fiber_candidates(ell, chi)?;
    if branch >= cands.len() {
        return Err(Error::invalid_parameter(format!(
            "branch {branch} out of range 0..{}",
            cands.len()
        )));
    }
    let cand = &cands[branch];
    let (e, f, k, k_inv) = build_matrices(ell, cand);
    let resid = relation_residuals(ell, &e, &f, &k, &k_inv);
    if resid > tol.relation {
        return Err(Error::ConstructionFailed(format!(
            "relation residual {resid:.3e} exceeds {:.1e}",
            tol.relation
        )));
    }
    let (got_chi, casimir_value) = character_from_matrices(ell, &e, &f, &k, tol.scalar)?;
    if !got_chi.close_to(chi, tol.scalar) {
        return Err(Error::ConstructionFailed(format!(
            "character mismatch: wanted {chi}, built {got_chi}"
        )));
    }
    Ok(CyclicRep {
        ell,
        e,
        f,
        k,
        k_inv,
        lambda: cand.lambda,
        a_param: cand.a,
        b_param: cand.b,
        chi: *chi,
        casimir_value,
        branch,
    })
}

/// Character data of a representation: the Z₀-character read from the
/// ℓ-th power scalars and the Casimir scalar, both re-derived from the
/// matrices (a round-trip check against the cached values).
pub fn rep_character(rep: &CyclicRep) -> Result<(CentralCharZ0, Complex64)> {
    character_from_matrices(rep.ell, &rep.e, &rep.f, &rep.k, 1e-8)
}

/// Read the Z₀-character and Casimir scalar off explicit matrices,
/// asserting scalarness of E^ℓ, F^ℓ, K^ℓ and of the Casimir.
pub fn character_from_matrices(
    ell: u32,
    e: &CMat,
    f: &CMat,
    k: &CMat,
    tol: f64,
) -> Result<(CentralCharZ0, Complex64)> {
    let read = |m: &CMat, name: &str| -> Result<Complex64> {
        let (mean, dev) = m.pow(ell).scalar_part();
        if dev > tol * (1.0 + mean.norm()) {
            return Err(Error::InvalidRep(format!(
                "{name}^{ell} is not scalar (deviation {dev:.3e})"
            )));
        }
        Ok(mean)
    };
    let x = read(e, "E")?;
    let y = read(f, "F")?;
    let z = read(k, "K")?;
    if z.norm() == 0.0 {
        return Err(Error::InvalidRep("K^ell vanishes".into()));
    }
    let k_inv = linalg::inverse(k, 1e-12).map_err(|_| Error::InvalidRep("K is singular".into()))?;
    let omega = casimir_matrix_parts(ell, e, f, k, &k_inv);
    let (casimir, dev) = omega.scalar_part();
    if dev > tol * (1.0 + casimir.norm()) {
        return Err(Error::InvalidRep(format!(
            "Casimir is not scalar (deviation {dev:.3e})"
        )));
    }
    Ok((CentralCharZ0 { x, z, y }, casimir))
}

/// Ω = F·E + (Kε + K⁻¹ε⁻¹)/(ε − ε⁻¹)² on explicit matrices.
pub fn casimir_matrix_parts(ell: u32, e: &CMat, f: &CMat, k: &CMat, k_inv: &CMat) -> CMat {
    let eps = eps_complex(ell);
    let denom = eps - 1.0 / eps;
    let denom_sq = denom * denom;
    f.matmul(e)
        .add(&k.scale(eps / denom_sq))
        .add(&k_inv.scale(1.0 / eps / denom_sq))
}

/// Ω on a module action carrying E, F, K, Kinv generators.
pub fn casimir_matrix_of_action(action: &ModuleAction, ell: u32) -> Result<CMat> {
    let get = |n: &str| {
        action
            .generator(n)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("action has no generator {n}")))
    };
    Ok(casimir_matrix_parts(
        ell,
        &get("E")?,
        &get("F")?,
        &get("K")?,
        &get("Kinv")?,
    ))
}

/// Tensor action through the coproduct: Δ(E) = E⊗1 + K⊗E,
/// Δ(F) = F⊗K⁻¹ + 1⊗F, Δ(K) = K⊗K on the ℓ²-dimensional space.
pub fn tensor_action(r1: &CyclicRep, r2: &CyclicRep) -> Result<ModuleAction> {
    if r1.ell != r2.ell {
        return Err(Error::invalid_parameter("tensor factors at distinct ell"));
    }
    let n = r1.ell as usize;
    let id = CMat::identity(n);
    let de = r1.e.kron(&id).add(&r1.k.kron(&r2.e));
    let df = r1.f.kron(&r2.k_inv).add(&id.kron(&r2.f));
    let dk = r1.k.kron(&r2.k);
    let dki = r1.k_inv.kron(&r2.k_inv);
    ModuleAction::new(
        vec![
            ("E".into(), de),
            ("F".into(), df),
            ("K".into(), dk),
            ("Kinv".into(), dki),
        ],
        ActingAlgebra::FullQuantumGroup,
    )
}

/// Restriction to the Borel B⁺ = ⟨E, K^{±1}⟩: the E and K matrices pass
/// through unchanged.
pub fn borel_restriction(r: &CyclicRep) -> ModuleAction {
    ModuleAction::new(
        vec![
            ("E".into(), r.e.clone()),
            ("K".into(), r.k.clone()),
            ("Kinv".into(), r.k_inv.clone()),
        ],
        ActingAlgebra::Borel,
    )
    .expect("shapes agree")
}
