//! A finite-dimensional module action: named complex generator matrices
//! tagged by the acting algebra (the full quantum group or its Borel).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActingAlgebra {
    FullQuantumGroup,
    Borel,
}

/// Generator matrices of a module action. The K generator must be
/// invertible where present.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub dim: usize,
    pub generators: Vec<(String, CMat)>,
    pub algebra: ActingAlgebra,
}

impl ModuleAction {
    pub fn new(generators: Vec<(String, CMat)>, algebra: ActingAlgebra) -> Result<ModuleAction> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("action needs a generator".into()));
        }
        let dim = generators[0].1.rows;
        for (name, g) in &generators {
            if g.rows != dim || g.cols != dim {
                return Err(Error::InvalidInput(format!(
                    "generator {name} is not {dim}x{dim}"
                )));
            }
        }
        Ok(ModuleAction {
            dim,
            generators,
            algebra,
        })
    }

    pub fn generator(&self, name: &str) -> Option<&CMat> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    pub fn matrices(&self) -> Vec<CMat> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    /// Conjugate every generator by g.
    pub fn conjugate(&self, g: &CMat, g_inv: &CMat) -> ModuleAction {
        ModuleAction {
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|(n, m)| (n.clone(), g.matmul(m).matmul(g_inv)))
                .collect(),
            algebra: self.algebra,
        }
    }

    /// r-fold block-diagonal direct sum of the action with itself.
    pub fn direct_sum_power(&self, r: usize) -> ModuleAction {
        assert!(r >= 1);
        let n = self.dim;
        let generators = self
            .generators
            .iter()
            .map(|(name, g)| {
                let mut big = CMat::zeros(n * r, n * r);
                for b in 0..r {
                    for i in 0..n {
                        for j in 0..n {
                            big[(b * n + i, b * n + j)] = g[(i, j)];
                        }
                    }
                }
                (name.clone(), big)
            })
            .collect();
        ModuleAction {
            dim: n * r,
            generators,
            algebra: self.algebra,
        }
    }

    /// Largest commutator norm ‖[c, g]‖ over the generators, used to
    /// validate candidate central elements.
    pub fn max_commutator_norm(&self, c: &CMat) -> f64 {
        self.generators
            .iter()
            .map(|(_, g)| c.commutator_norm(g))
            .fold(0.0, f64::max)
    }

    /// Scalar of the ℓ-th power of a named generator, when it is scalar
    /// within the tolerance; used for reading Z₀-characters off blocks.
    pub fn power_scalar(&self, name: &str, ell: u32, tol: f64) -> Option<Complex64> {
        let g = self.generator(name)?;
        let p = g.pow(ell);
        let (mean, dev) = p.scalar_part();
        if dev <= tol * (1.0 + mean.norm()) {
            Some(mean)
        } else {
            None
        }
    }
}
