//! Balanced q-integers, q-factorials and Gaussian binomials, evaluated
//! exactly at a primitive ℓ-th root of unity.
//!
//! The balanced q-integer is \[h\] = (q^h − q^{−h})/(q − q^{−1}); the
//! binomial \[m h\] = \[m\]!/(\[m−h\]!\[h\]!). At a root of unity the factorial
//! quotient can hit 0/0, so the binomial is computed as an exact Laurent
//! polynomial in ℤ[q, q⁻¹] first and specialized afterwards.

use num_traits::{One, Zero};

use super::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};

/// Laurent polynomial over ℚ: coefficient of q^(min_exp + i) at index i.
#[derive(Clone, Debug, PartialEq)]
struct Laurent {
    min_exp: i64,
    coeffs: Vec<Rat>,
}

impl Laurent {
    fn zero() -> Self {
        Laurent {
            min_exp: 0,
            coeffs: vec![Rat::zero()],
        }
    }

    fn one() -> Self {
        Laurent {
            min_exp: 0,
            coeffs: vec![Rat::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        while self.coeffs.len() > 1 && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.min_exp += 1;
        }
        if self.is_zero() {
            self.min_exp = 0;
        }
    }

    /// The balanced q-integer \[h\] = q^{h−1} + q^{h−3} + ... + q^{1−h}.
    fn q_int(h: u64) -> Self {
        if h == 0 {
            return Laurent::zero();
        }
        Laurent {
            min_exp: 1 - h as i64,
            coeffs: (0..(2 * h - 1))
                .map(|i| if i % 2 == 0 { Rat::one() } else { Rat::zero() })
                .collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut out = Laurent {
            min_exp: self.min_exp + other.min_exp,
            coeffs,
        };
        out.trim();
        out
    }

    /// Exact division; panics if the division leaves a remainder, which
    /// cannot happen for Gaussian-binomial quotients.
    fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Laurent::zero();
        }
        // Ordinary polynomial division on the coefficient vectors; the
        // exponent offset is handled separately.
        let mut rem = self.coeffs.clone();
        let div = &other.coeffs;
        let dd = div.len() - 1;
        assert!(rem.len() > dd, "non-exact Laurent division");
        let lead = div[dd].clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            quot[k] = c.clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in div.iter().enumerate() {
                let t = &c * d;
                rem[k + i] -= t;
            }
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "non-exact Laurent division"
        );
        let mut out = Laurent {
            min_exp: self.min_exp - other.min_exp,
            coeffs: quot,
        };
        out.trim();
        out
    }

    /// Specialize q ↦ ε (primitive ℓ-th root).
    fn eval_at_root(&self, ell: u32) -> Result<CycloNum> {
        let mut acc = CycloNum::zero(ell)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = CycloNum::root(ell, self.min_exp + i as i64)?;
            acc = acc.add(&root.scale(c));
        }
        Ok(acc)
    }
}

/// \[h\]_ε as an exact cyclotomic number. Negative h gives −\[−h\].
pub fn q_int(h: i64, ell: u32) -> Result<CycloNum> {
    if h < 0 {
        return Ok(q_int(-h, ell)?.neg());
    }
    Laurent::q_int(h as u64).eval_at_root(ell)
}

/// The balanced Gaussian binomial \[m h\]_ε = \[m\]!/(\[m−h\]!\[h\]!), computed as
/// an exact Laurent polynomial before specializing at ε.
pub fn q_binomial(m: u64, h: u64, ell: u32) -> Result<CycloNum> {
    if h > m {
        return Err(Error::invalid_parameter(format!(
            "q_binomial requires 0 <= h <= m, got m={m}, h={h}"
        )));
    }
    let mut numer = Laurent::one();
    for i in (m - h + 1)..=m {
        numer = numer.mul(&Laurent::q_int(i));
    }
    let mut denom = Laurent::one();
    for i in 1..=h {
        denom = denom.mul(&Laurent::q_int(i));
    }
    numer.div_exact(&denom).eval_at_root(ell)
}
