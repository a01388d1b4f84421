//! Splitting a semisimple quotient into simple blocks.
//!
//! The split runs in complex floating point even for exact inputs: a
//! seeded random element of the center is diagonalized through its left
//! multiplication operator, the block unit idempotents are recovered as
//! Lagrange polynomials in that element, and the integer outputs
//! (block sizes k_i, multiplicities h_i) are certified post hoc through
//! Σ h_i·k_i = n, idempotent residuals, and integrality residuals.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};

use super::algebra::FiniteTraceAlgebra;
use super::radical::{quotient_mod_radical, radical};

/// Simple-block sizes and multiplicities of a split semisimple algebra:
/// pairs (k_i, h_i) with Σ h_i·k_i equal to the CH degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpectrum {
    pub blocks: Vec<(usize, usize)>,
}

impl BlockSpectrum {
    pub fn total_degree(&self) -> usize {
        self.blocks.iter().map(|(k, h)| k * h).sum()
    }
}

impl std::fmt::Display for BlockSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (k, h)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({k},{h})")?;
        }
        write!(f, "}}")
    }
}

/// Reduced trace of a split semisimple algebra: the block trace with all
/// multiplicities set to 1, together with the uniform multiplier r when
/// the input trace is r times the reduced one.
#[derive(Clone, Debug)]
pub struct ReducedTrace {
    pub trace_vec: Vec<Scalar>,
    pub multiplier: Option<usize>,
    pub spectrum: BlockSpectrum,
}

// ---- complex structure-constant algebra ----

pub(crate) struct CAlg {
    pub dim: usize,
    structure: Vec<Vec<(usize, C64)>>,
    pub unit: Vec<C64>,
    pub trace: Vec<C64>,
}

impl CAlg {
    pub fn from_algebra(a: &FiniteTraceAlgebra) -> CAlg {
        let d = a.dim();
        let mut structure = vec![Vec::new(); d * d];
        for (i, j, k, c) in a.structure_entries() {
            structure[i * d + j].push((k, c.embed()));
        }
        CAlg {
            dim: d,
            structure,
            unit: a.unit().iter().map(|s| s.embed()).collect(),
            trace: a.trace_vec().iter().map(|s| s.embed()).collect(),
        }
    }

    pub fn mul(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            if a[i].norm() == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                if b[j].norm() == 0.0 {
                    continue;
                }
                let f = a[i] * b[j];
                for (k, c) in &self.structure[i * self.dim + j] {
                    out[*k] += f * c;
                }
            }
        }
        out
    }

    pub fn trace_of(&self, a: &[C64]) -> C64 {
        a.iter().zip(&self.trace).map(|(x, t)| x * t).sum()
    }

    /// Matrix of left multiplication by z: column j holds z·e_j.
    pub fn lmul_matrix(&self, z: &[C64]) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = vec![C64::new(0.0, 0.0); self.dim];
            e[j] = C64::new(1.0, 0.0);
            let col = self.mul(z, &e);
            for i in 0..self.dim {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    /// Basis of the center: solutions of e_i·x = x·e_i for all i.
    pub fn center_basis(&self) -> Vec<Vec<C64>> {
        let d = self.dim;
        // rows: (i, k) equation from commuting with e_i at coordinate k;
        // columns: unknowns x_j
        let mut m = CMat::zeros(d * d, d);
        for j in 0..d {
            let mut x = vec![C64::new(0.0, 0.0); d];
            x[j] = C64::new(1.0, 0.0);
            for i in 0..d {
                let mut e = vec![C64::new(0.0, 0.0); d];
                e[i] = C64::new(1.0, 0.0);
                let lhs = self.mul(&e, &x);
                let rhs = self.mul(&x, &e);
                for k in 0..d {
                    m[(i * d + k, j)] = lhs[k] - rhs[k];
                }
            }
        }
        linalg::nullspace(&m, 1e-9)
    }
}

/// Decompose a (quotient-)semisimple algebra into simple blocks; returns
/// the block spectrum with all integer outputs certified.
pub fn block_decompose(a: &FiniteTraceAlgebra) -> Result<BlockSpectrum> {
    block_decompose_seeded(a, 0)
}

pub fn block_decompose_seeded(a: &FiniteTraceAlgebra, seed: u64) -> Result<BlockSpectrum> {
    Ok(split_complex(a, seed)?.spectrum)
}

pub(crate) struct Split {
    pub spectrum: BlockSpectrum,
    /// Block unit idempotents in the coordinates of the (quotient)
    /// algebra, ordered as in `spectrum`.
    pub projectors: Vec<Vec<C64>>,
    pub calg: CAlg,
}

pub(crate) fn split_complex(a: &FiniteTraceAlgebra, seed: u64) -> Result<Split> {
    let rad = radical(a)?;
    let (q, _) = quotient_mod_radical(a, &rad)?;
    let calg = CAlg::from_algebra(&q.embed_complex());
    let n = a.ch_degree();
    let center = calg.center_basis();
    let s_dim = center.len();
    if s_dim == 0 {
        return Err(Error::DecompositionFailed("empty center".into()));
    }
    let mut last_issue = String::new();
    for attempt in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut z = vec![C64::new(0.0, 0.0); calg.dim];
        for c in &center {
            let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for (zi, ci) in z.iter_mut().zip(c) {
                *zi += w * ci;
            }
        }
        let lz = calg.lmul_matrix(&z);
        let eigs = linalg::eigenvalues(&lz)?;
        let scale = eigs.iter().map(|e| e.norm()).fold(1.0_f64, f64::max);
        let (means, _sizes, gap) = linalg::cluster_values(&eigs, 1e-8 * scale);
        if means.len() != s_dim {
            last_issue = format!(
                "random central element separated {} of {} blocks",
                means.len(),
                s_dim
            );
            continue;
        }
        if s_dim > 1 && gap < 1e-6 * scale {
            last_issue = format!("eigenvalue clusters closer than gap threshold ({gap:.3e})");
            continue;
        }
        // Lagrange idempotents P_i = ∏_{j≠i} (z − μ_j)/(μ_i − μ_j)
        let mut blocks: Vec<(usize, usize)> = Vec::with_capacity(s_dim);
        let mut projectors = Vec::with_capacity(s_dim);
        let mut ok = true;
        for (i, mu_i) in means.iter().enumerate() {
            let mut p = calg.unit.clone();
            for (j, mu_j) in means.iter().enumerate() {
                if i == j {
                    continue;
                }
                // p ← p·(z − μ_j)/(μ_i − μ_j)
                let mut shifted = z.clone();
                for (sk, uk) in shifted.iter_mut().zip(&calg.unit) {
                    *sk -= mu_j * uk;
                }
                p = calg.mul(&p, &shifted);
                let denom = mu_i - mu_j;
                for pk in p.iter_mut() {
                    *pk /= denom;
                }
            }
            let p2 = calg.mul(&p, &p);
            let idem_res: f64 = p2
                .iter()
                .zip(&p)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if idem_res > 1e-6 * (1.0 + p.iter().map(|x| x.norm()).fold(0.0, f64::max)) {
                last_issue = format!("idempotent residual {idem_res:.3e}");
                ok = false;
                break;
            }
            // k_i² = rank of left multiplication by P_i
            let lp = calg.lmul_matrix(&p);
            let rank = linalg::rank(&lp, 1e-6);
            let k = (rank as f64).sqrt().round() as usize;
            if k == 0 || k * k != rank {
                last_issue = format!("block rank {rank} is not a perfect square");
                ok = false;
                break;
            }
            // h_i = t(P_i)/k_i, must be a positive integer
            let h_c = calg.trace_of(&p) / k as f64;
            let h = h_c.re.round();
            let mult_res = (h_c - Complex64::new(h, 0.0)).norm();
            if mult_res > 1e-6 || h < 1.0 {
                return Err(Error::DecompositionFailed(format!(
                    "non-integral block multiplicity {h_c} for block size {k} \
                     (trace incompatible with an {n}-dimensional semisimple representation)"
                )));
            }
            blocks.push((k, h as usize));
            projectors.push(p);
        }
        if !ok {
            continue;
        }
        let total: usize = blocks.iter().map(|(k, h)| k * h).sum();
        if total != n {
            return Err(Error::DecompositionFailed(format!(
                "block degrees sum to {total}, expected ch_degree {n}"
            )));
        }
        // canonical order: by (k, h); keep projectors aligned
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&i| blocks[i]);
        let spectrum = BlockSpectrum {
            blocks: order.iter().map(|&i| blocks[i]).collect(),
        };
        let projectors = order.into_iter().map(|i| projectors[i].clone()).collect();
        return Ok(Split {
            spectrum,
            projectors,
            calg,
        });
    }
    Err(Error::DecompositionFailed(format!(
        "block separation failed after 5 reseeds: {last_issue}"
    )))
}

/// The reduced trace of a split semisimple algebra, together with the
/// uniform multiplier r when one exists (every CH-compatible trace on a
/// prime algebra is an integer multiple of the reduced trace).
pub fn reduced_trace(a: &FiniteTraceAlgebra) -> Result<ReducedTrace> {
    let rad = radical(a)?;
    if !rad.is_empty() {
        return Err(Error::NotSemisimple(format!(
            "radical has dimension {}",
            rad.len()
        )));
    }
    let split = split_complex(a, 0)?;
    let hs: Vec<usize> = split.spectrum.blocks.iter().map(|&(_, h)| h).collect();
    let uniform = hs.windows(2).all(|w| w[0] == w[1]);
    if uniform {
        let r = hs[0];
        let inv = Scalar::from_i64(r as i64).try_inv()?;
        let trace_vec = a.trace_vec().iter().map(|t| t * &inv).collect();
        return Ok(ReducedTrace {
            trace_vec,
            multiplier: Some(r),
            spectrum: split.spectrum,
        });
    }
    // mixed multiplicities: reduce block by block numerically
    let d = a.dim();
    let mut trace_vec = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![C64::new(0.0, 0.0); d];
        e[j] = C64::new(1.0, 0.0);
        let mut acc = C64::new(0.0, 0.0);
        for (p, &(_, h)) in split.projectors.iter().zip(&split.spectrum.blocks) {
            let ep = split.calg.mul(&e, p);
            acc += split.calg.trace_of(&ep) / h as f64;
        }
        trace_vec.push(Scalar::C64(acc));
    }
    Ok(ReducedTrace {
        trace_vec,
        multiplier: None,
        spectrum: split.spectrum,
    })
}
