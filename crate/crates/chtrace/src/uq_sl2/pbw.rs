//! Exact PBW arithmetic in U_ε(sl₂) for odd ℓ ≥ 3.
//!
//! Elements are finite sums of normally ordered monomials F^a K^b E^c
//! (a, c ≥ 0, b ∈ ℤ) with cyclotomic coefficients. Multiplication
//! straightens products with the closed sl₂ rules
//!   K E = ε² E K,   K F = ε⁻² F K,
//!   E F^a = F^a E + \[a\]·F^{a−1}(ε^{1−a}K − ε^{a−1}K⁻¹)/(ε − ε⁻¹),
//! applied one left generator at a time.

use std::collections::BTreeMap;

use crate::arith::{cyclo, q_int, CycloNum};
use crate::error::{Error, Result};

/// PBW exponent triple (F-degree, K-degree, E-degree).
pub type Mono = (u32, i64, u32);

#[derive(Clone, PartialEq)]
pub struct UqElement {
    ell: u32,
    terms: BTreeMap<Mono, CycloNum>,
}

impl std::fmt::Debug for UqElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b, c), coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({coeff})")?;
            if *a > 0 {
                write!(f, " F^{a}")?;
            }
            if *b != 0 {
                write!(f, " K^{b}")?;
            }
            if *c > 0 {
                write!(f, " E^{c}")?;
            }
        }
        Ok(())
    }
}

impl UqElement {
    pub fn zero(ell: u32) -> Result<Self> {
        CycloNum::zero(ell)?;
        Ok(UqElement {
            ell,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(ell: u32) -> Result<Self> {
        Self::monomial(ell, 0, 0, 0, CycloNum::one(ell)?)
    }

    pub fn gen_e(ell: u32) -> Result<Self> {
        Self::monomial(ell, 0, 0, 1, CycloNum::one(ell)?)
    }

    pub fn gen_f(ell: u32) -> Result<Self> {
        Self::monomial(ell, 1, 0, 0, CycloNum::one(ell)?)
    }

    pub fn gen_k(ell: u32) -> Result<Self> {
        Self::monomial(ell, 0, 1, 0, CycloNum::one(ell)?)
    }

    pub fn gen_k_inv(ell: u32) -> Result<Self> {
        Self::monomial(ell, 0, -1, 0, CycloNum::one(ell)?)
    }

    pub fn monomial(ell: u32, a: u32, b: i64, c: u32, coeff: CycloNum) -> Result<Self> {
        if coeff.ell() != ell {
            return Err(Error::invalid_parameter("coefficient conductor mismatch"));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((a, b, c), coeff);
        }
        Ok(UqElement { ell, terms })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycloNum)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Mono> {
        self.terms.keys().copied().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, mono: Mono, coeff: CycloNum) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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
        self.check_ell(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UqElement {
            ell: self.ell,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        let mut out = UqElement {
            ell: self.ell,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.insert(*m, c.mul(s));
        }
        out
    }

    fn check_ell(&self, other: &Self) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::invalid_parameter(format!(
                "mixing PBW elements at ell = {} and ell = {}",
                self.ell, other.ell
            )));
        }
        Ok(())
    }

    /// Left-multiply by E, one straightening step per monomial.
    fn lmul_e(&self) -> Self {
        let ell = self.ell;
        let eps = cyclo(ell, 1).unwrap();
        let eps_inv_diff = eps
            .sub(&cyclo(ell, -1).unwrap())
            .inv()
            .expect("ε − ε⁻¹ is nonzero for ℓ ≥ 3");
        let mut out = UqElement {
            ell,
            terms: BTreeMap::new(),
        };
        for (&(a, b, c), coeff) in &self.terms {
            // E F^a K^b E^c = ε^{−2b} F^a K^b E^{c+1} + [a]/(ε−ε⁻¹) ·
            //     (ε^{1−a} F^{a−1} K^{b+1} E^c − ε^{a−1} F^{a−1} K^{b−1} E^c)
            let twist = cyclo(ell, -2 * b).unwrap();
            out.insert((a, b, c + 1), coeff.mul(&twist));
            if a >= 1 {
                let qa = q_int(a as i64, ell).unwrap().mul(&eps_inv_diff);
                let up = coeff.mul(&qa).mul(&cyclo(ell, 1 - a as i64).unwrap());
                out.insert((a - 1, b + 1, c), up);
                let down = coeff.mul(&qa).mul(&cyclo(ell, a as i64 - 1).unwrap()).neg();
                out.insert((a - 1, b - 1, c), down);
            }
        }
        out
    }

    /// Left-multiply by K^{±1}: K F^a = ε^{∓2a} F^a K^{±1} and K-powers
    /// commute.
    fn lmul_k(&self, sign: i64) -> Self {
        let ell = self.ell;
        let mut out = UqElement {
            ell,
            terms: BTreeMap::new(),
        };
        for (&(a, b, c), coeff) in &self.terms {
            let twist = cyclo(ell, -2 * sign * a as i64).unwrap();
            out.insert((a, b + sign, c), coeff.mul(&twist));
        }
        out
    }

    fn lmul_f(&self) -> Self {
        let ell = self.ell;
        UqElement {
            ell,
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c), coeff)| ((a + 1, b, c), coeff.clone()))
                .collect(),
        }
    }

    /// Exact product in PBW normal form.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_ell(other)?;
        let mut out = UqElement {
            ell: self.ell,
            terms: BTreeMap::new(),
        };
        for (&(a, b, c), coeff) in &self.terms {
            // (F^a K^b E^c)·v, built from the innermost factor outward
            let mut acc = other.clone();
            for _ in 0..c {
                acc = acc.lmul_e();
            }
            let sign = if b >= 0 { 1 } else { -1 };
            for _ in 0..b.unsigned_abs() {
                acc = acc.lmul_k(sign);
            }
            for _ in 0..a {
                acc = acc.lmul_f();
            }
            for (m, c2) in &acc.terms {
                out.insert(*m, c2.mul(coeff));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = UqElement::one(self.ell)?;
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }
}

/// The Casimir Ω = FE + (Kε + K⁻¹ε⁻¹)/(ε − ε⁻¹)², central in U_ε(sl₂).
pub fn casimir(ell: u32) -> Result<UqElement> {
    let eps = cyclo(ell, 1)?;
    let eps_inv = cyclo(ell, -1)?;
    let denom = eps.sub(&eps_inv);
    let denom_sq_inv = denom.mul(&denom).inv()?;
    let fe = UqElement::monomial(ell, 1, 0, 1, CycloNum::one(ell)?)?;
    let k_part = UqElement::monomial(ell, 0, 1, 0, eps.mul(&denom_sq_inv))?;
    let k_inv_part = UqElement::monomial(ell, 0, -1, 0, eps_inv.mul(&denom_sq_inv))?;
    fe.add(&k_part)?.add(&k_inv_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eps_diff_inv(ell: u32) -> CycloNum {
        cyclo(ell, 1)
            .unwrap()
            .sub(&cyclo(ell, -1).unwrap())
            .inv()
            .unwrap()
    }

    #[test]
    fn defining_relation_ef() {
        // E·F = FE + (K − K⁻¹)/(ε − ε⁻¹)
        for ell in [3u32, 5] {
            let e = UqElement::gen_e(ell).unwrap();
            let f = UqElement::gen_f(ell).unwrap();
            let prod = e.multiply(&f).unwrap();
            let c = eps_diff_inv(ell);
            let expect = UqElement::monomial(ell, 1, 0, 1, CycloNum::one(ell).unwrap())
                .unwrap()
                .add(&UqElement::monomial(ell, 0, 1, 0, c.clone()).unwrap())
                .unwrap()
                .add(&UqElement::monomial(ell, 0, -1, 0, c.neg()).unwrap())
                .unwrap();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn defining_relation_ke() {
        // K·E = ε² E·K
        let ell = 5;
        let k = UqElement::gen_k(ell).unwrap();
        let e = UqElement::gen_e(ell).unwrap();
        let lhs = k.multiply(&e).unwrap();
        let rhs = e.multiply(&k).unwrap().scale(&cyclo(ell, 2).unwrap());
        assert_eq!(lhs, rhs);
        // K·F = ε⁻² F·K
        let f = UqElement::gen_f(ell).unwrap();
        let lhs = k.multiply(&f).unwrap();
        let rhs = f.multiply(&k).unwrap().scale(&cyclo(ell, -2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_and_k_inverse_cancel() {
        let ell = 3;
        let k = UqElement::gen_k(ell).unwrap();
        let ki = UqElement::gen_k_inv(ell).unwrap();
        assert_eq!(k.multiply(&ki).unwrap(), UqElement::one(ell).unwrap());
    }

    #[test]
    fn ell_power_of_e_is_central() {
        // E^ℓ F − F E^ℓ = 0 exactly (q-integer [ℓ] vanishes)
        for ell in [3u32, 5] {
            let e_ell = UqElement::gen_e(ell).unwrap().pow(ell).unwrap();
            let f = UqElement::gen_f(ell).unwrap();
            assert!(e_ell.commutator(&f).unwrap().is_zero(), "ell = {ell}");
            let k = UqElement::gen_k(ell).unwrap();
            assert!(e_ell.commutator(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn casimir_support_and_centrality() {
        for ell in [3u32, 5] {
            let omega = casimir(ell).unwrap();
            assert_eq!(
                omega.support(),
                vec![(0, -1, 0), (0, 1, 0), (1, 0, 1)],
                "PBW support of the Casimir"
            );
            for g in [
                UqElement::gen_e(ell).unwrap(),
                UqElement::gen_f(ell).unwrap(),
                UqElement::gen_k(ell).unwrap(),
                UqElement::gen_k_inv(ell).unwrap(),
            ] {
                assert!(
                    omega.commutator(&g).unwrap().is_zero(),
                    "Casimir must commute at ell = {ell}"
                );
            }
        }
    }

    fn random_element(rng: &mut ChaCha8Rng, ell: u32, max_terms: usize) -> UqElement {
        let mut acc = UqElement::zero(ell).unwrap();
        let terms = rng.gen_range(1..=max_terms);
        for _ in 0..terms {
            let a = rng.gen_range(0..3u32);
            let b = rng.gen_range(-2..3i64);
            let c = rng.gen_range(0..3u32);
            let coeff =
                cyclo(ell, rng.gen_range(0..ell as i64))
                    .unwrap()
                    .scale(&crate::arith::rat(
                        rng.gen_range(-3..4),
                        1 + rng.gen_range(0..3),
                    ));
            acc = acc
                .add(&UqElement::monomial(ell, a, b, c, coeff).unwrap())
                .unwrap();
        }
        acc
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for ell in [3u32, 5] {
            for _ in 0..100 {
                let u = random_element(&mut rng, ell, 4);
                let v = random_element(&mut rng, ell, 4);
                let w = random_element(&mut rng, ell, 4);
                let lhs = u.multiply(&v).unwrap().multiply(&w).unwrap();
                let rhs = u.multiply(&v.multiply(&w).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn casimir_commutes_with_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for ell in [3u32, 5] {
            let omega = casimir(ell).unwrap();
            for _ in 0..20 {
                let u = random_element(&mut rng, ell, 3);
                assert!(omega.commutator(&u).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn ell_mismatch_rejected() {
        let a = UqElement::gen_e(3).unwrap();
        let b = UqElement::gen_f(5).unwrap();
        assert!(a.multiply(&b).is_err());
    }
}
