//! Exact arithmetic in U_ε(sl₂) ⊗ U_ε(sl₂) on the tensor PBW basis, used
//! to verify the primitive form of the ℓ-th powers of the coproduct:
//!   Δ(E)^ℓ = E^ℓ⊗1 + K^ℓ⊗E^ℓ,
//!   Δ(F)^ℓ = F^ℓ⊗K^{−ℓ} + 1⊗F^ℓ,
//!   Δ(K)^ℓ = K^ℓ⊗K^ℓ,
//! which hold exactly because the interior balanced q-binomials vanish
//! at a primitive ℓ-th root of unity.

use std::collections::BTreeMap;

use crate::arith::CycloNum;
use crate::error::{Error, Result};

use super::pbw::{Mono, UqElement};

#[derive(Clone, PartialEq)]
pub struct UqTensorElement {
    ell: u32,
    terms: BTreeMap<(Mono, Mono), CycloNum>,
}

impl std::fmt::Debug for UqTensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for ((m1, m2), c) in &self.terms {
            write!(f, " + ({c})·{m1:?}⊗{m2:?}")?;
        }
        Ok(())
    }
}

impl UqTensorElement {
    pub fn zero(ell: u32) -> Result<Self> {
        CycloNum::zero(ell)?;
        Ok(UqTensorElement {
            ell,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(ell: u32) -> Result<Self> {
        Self::tensor(&UqElement::one(ell)?, &UqElement::one(ell)?)
    }

    /// u ⊗ v as a tensor element.
    pub fn tensor(u: &UqElement, v: &UqElement) -> Result<Self> {
        if u.ell() != v.ell() {
            return Err(Error::invalid_parameter("tensor factors at distinct ell"));
        }
        let mut terms = BTreeMap::new();
        for (m1, c1) in u.terms() {
            for (m2, c2) in v.terms() {
                let c = c1.mul(c2);
                if !c.is_zero() {
                    terms.insert((*m1, *m2), c);
                }
            }
        }
        Ok(UqTensorElement {
            ell: u.ell(),
            terms,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: (Mono, Mono), coeff: CycloNum) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::invalid_parameter("tensor elements at distinct ell"));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let negated = UqTensorElement {
            ell: other.ell,
            terms: other.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        };
        self.add(&negated)
    }

    /// Componentwise product (u⊗v)(u'⊗v') = uu' ⊗ vv'.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::invalid_parameter("tensor elements at distinct ell"));
        }
        let ell = self.ell;
        let mut out = UqTensorElement {
            ell,
            terms: BTreeMap::new(),
        };
        for ((p1, q1), c1) in &self.terms {
            let left1 = UqElement::monomial(ell, p1.0, p1.1, p1.2, CycloNum::one(ell)?)?;
            let right1 = UqElement::monomial(ell, q1.0, q1.1, q1.2, CycloNum::one(ell)?)?;
            for ((p2, q2), c2) in &other.terms {
                let left2 = UqElement::monomial(ell, p2.0, p2.1, p2.2, CycloNum::one(ell)?)?;
                let right2 = UqElement::monomial(ell, q2.0, q2.1, q2.2, CycloNum::one(ell)?)?;
                let lp = left1.multiply(&left2)?;
                let rp = right1.multiply(&right2)?;
                let c = c1.mul(c2);
                for (ml, cl) in lp.terms() {
                    for (mr, cr) in rp.terms() {
                        out.insert((*ml, *mr), c.mul(cl).mul(cr));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = UqTensorElement::one(self.ell)?;
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }
}

/// Δ(E) = E⊗1 + K⊗E.
pub fn delta_e(ell: u32) -> Result<UqTensorElement> {
    let e = UqElement::gen_e(ell)?;
    let one = UqElement::one(ell)?;
    let k = UqElement::gen_k(ell)?;
    UqTensorElement::tensor(&e, &one)?.add(&UqTensorElement::tensor(&k, &e)?)
}

/// Δ(F) = F⊗K⁻¹ + 1⊗F.
pub fn delta_f(ell: u32) -> Result<UqTensorElement> {
    let f = UqElement::gen_f(ell)?;
    let one = UqElement::one(ell)?;
    let ki = UqElement::gen_k_inv(ell)?;
    UqTensorElement::tensor(&f, &ki)?.add(&UqTensorElement::tensor(&one, &f)?)
}

/// Δ(K) = K⊗K.
pub fn delta_k(ell: u32) -> Result<UqTensorElement> {
    let k = UqElement::gen_k(ell)?;
    UqTensorElement::tensor(&k, &k)
}

/// Exact check that Δ(E)^ℓ, Δ(F)^ℓ, Δ(K)^ℓ take the primitive form on
/// the ℓ-th powers. Returns the three differences (all must be zero).
pub fn delta_ell_power_defects(
    ell: u32,
) -> Result<(UqTensorElement, UqTensorElement, UqTensorElement)> {
    let one = UqElement::one(ell)?;
    let e_l = UqElement::gen_e(ell)?.pow(ell)?;
    let f_l = UqElement::gen_f(ell)?.pow(ell)?;
    let k_l = UqElement::gen_k(ell)?.pow(ell)?;
    let k_inv_l = UqElement::gen_k_inv(ell)?.pow(ell)?;

    let de = delta_e(ell)?.pow(ell)?;
    let de_expect =
        UqTensorElement::tensor(&e_l, &one)?.add(&UqTensorElement::tensor(&k_l, &e_l)?)?;
    let df = delta_f(ell)?.pow(ell)?;
    let df_expect =
        UqTensorElement::tensor(&f_l, &k_inv_l)?.add(&UqTensorElement::tensor(&one, &f_l)?)?;
    let dk = delta_k(ell)?.pow(ell)?;
    let dk_expect = UqTensorElement::tensor(&k_l, &k_l)?;
    Ok((
        de.sub(&de_expect)?,
        df.sub(&df_expect)?,
        dk.sub(&dk_expect)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_is_an_algebra_map_on_relations() {
        // Δ(K)Δ(E) = ε²·Δ(E)Δ(K), computed entirely in the tensor PBW basis
        let ell = 3;
        let dk = delta_k(ell).unwrap();
        let de = delta_e(ell).unwrap();
        let lhs = dk.multiply(&de).unwrap();
        let eps2 = crate::arith::cyclo(ell, 2).unwrap();
        let rhs_raw = de.multiply(&dk).unwrap();
        let rhs = UqTensorElement {
            ell,
            terms: rhs_raw
                .terms
                .iter()
                .map(|(k, c)| (*k, c.mul(&eps2)))
                .collect(),
        };
        assert_eq!(lhs, rhs);
        // Δ(E)Δ(F) − Δ(F)Δ(E) = (Δ(K) − Δ(K)⁻¹)/(ε−ε⁻¹)
        let df = delta_f(ell).unwrap();
        let comm = lhs_comm(&de, &df);
        let ki = UqElement::gen_k_inv(ell).unwrap();
        let dki = UqTensorElement::tensor(&ki, &ki).unwrap();
        let denom_inv = crate::arith::cyclo(ell, 1)
            .unwrap()
            .sub(&crate::arith::cyclo(ell, -1).unwrap())
            .inv()
            .unwrap();
        let expect_raw = dk.sub(&dki).unwrap();
        let expect = UqTensorElement {
            ell,
            terms: expect_raw
                .terms
                .iter()
                .map(|(k, c)| (*k, c.mul(&denom_inv)))
                .collect(),
        };
        assert_eq!(comm, expect);
    }

    fn lhs_comm(a: &UqTensorElement, b: &UqTensorElement) -> UqTensorElement {
        a.multiply(b).unwrap().sub(&b.multiply(a).unwrap()).unwrap()
    }

    #[test]
    fn delta_ell_powers_are_primitive() {
        for ell in [3u32, 5] {
            let (de, df, dk) = delta_ell_power_defects(ell).unwrap();
            assert!(de.is_zero(), "Δ(E)^{ell} defect nonzero");
            assert!(df.is_zero(), "Δ(F)^{ell} defect nonzero");
            assert!(dk.is_zero(), "Δ(K)^{ell} defect nonzero");
        }
    }
}
