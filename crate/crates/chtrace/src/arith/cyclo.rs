//! Exact arithmetic in the ℓ-th cyclotomic field for odd ℓ ≥ 3.
//!
//! Elements are stored in the power basis 1, ε, ..., ε^{φ(ℓ)-1} of
//! ℚ\[q\]/Φ_ℓ(q), with coefficients in ℚ. Reduction modulo the ℓ-th
//! cyclotomic polynomial is applied after every multiplication, and
//! inversion runs the extended Euclidean algorithm against Φ_ℓ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Euler totient; only needed for modest moduli.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn check_ell(ell: u32) -> Result<()> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::invalid_parameter(format!(
            "ell must be odd and >= 3, got {ell}"
        )));
    }
    Ok(())
}

// ---- dense polynomials over Q, lowest degree first ----

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_deg(p: &[Rat]) -> usize {
    p.len() - 1
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b; b must be nonzero.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = poly_deg(b);
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by zero polynomial");
    if poly_deg(&rem) < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); poly_deg(&rem) - db + 1];
    while poly_deg(&rem) >= db && !(rem.len() == 1 && rem[0].is_zero()) {
        let dr = poly_deg(&rem);
        let c = &rem[dr] / &lead;
        if c.is_zero() {
            break;
        }
        quot[dr - db] = c.clone();
        for k in 0..=db {
            let t = &c * &b[k];
            rem[dr - db + k] -= t;
        }
        poly_trim(&mut rem);
        if dr == db {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The ℓ-th cyclotomic polynomial, by exact division of q^ℓ - 1 by the
/// product of Φ_d over proper divisors d of ℓ.
fn cyclotomic_poly_uncached(ell: u32) -> Vec<Rat> {
    if ell == 1 {
        // q - 1
        return vec![-Rat::one(), Rat::one()];
    }
    let mut num = vec![Rat::zero(); ell as usize + 1];
    num[0] = -Rat::one();
    num[ell as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in 1..ell {
        if ell % d == 0 {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let (quot, rem) = poly_divmod(&num, &den);
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "cyclotomic division left a remainder"
    );
    quot
}

/// Cached Φ_ℓ as a dense coefficient vector, lowest degree first.
pub fn cyclotomic_poly(ell: u32) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&ell) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_poly_uncached(ell));
    cache.lock().unwrap().insert(ell, p.clone());
    p
}

/// An element of ℚ(ε) with ε a primitive ℓ-th root of unity, ℓ odd ≥ 3.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    ell: u32,
    /// Length φ(ℓ); coefficient of ε^i at index i.
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycloNum(ell={}, {})", self.ell, self)
    }
}

impl std::fmt::Display for CycloNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "e^{i}")?;
            } else {
                write!(f, "({c})e^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycloNum {
    /// Zero in ℚ(ε) for the given ℓ.
    pub fn zero(ell: u32) -> Result<Self> {
        check_ell(ell)?;
        let phi = euler_phi(ell) as usize;
        Ok(CycloNum {
            ell,
            coeffs: vec![Rat::zero(); phi],
        })
    }

    pub fn one(ell: u32) -> Result<Self> {
        let mut z = Self::zero(ell)?;
        z.coeffs[0] = Rat::one();
        Ok(z)
    }

    pub fn from_rat(ell: u32, r: &Rat) -> Result<Self> {
        let mut z = Self::zero(ell)?;
        z.coeffs[0] = r.clone();
        Ok(z)
    }

    /// ε^power, reduced to the power basis. Exponents are taken mod ℓ.
    pub fn root(ell: u32, power: i64) -> Result<Self> {
        check_ell(ell)?;
        let e = power.rem_euclid(ell as i64) as usize;
        let phi = euler_phi(ell) as usize;
        let mut z = Self::zero(ell)?;
        if e < phi {
            z.coeffs[e] = Rat::one();
            return Ok(z);
        }
        // reduce q^e mod Φ_ℓ
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        let modulus = cyclotomic_poly(ell);
        let (_, rem) = poly_divmod(&poly, &modulus);
        for (i, c) in rem.into_iter().enumerate() {
            z.coeffs[i] = c;
        }
        Ok(z)
    }

    pub fn from_coeffs(ell: u32, coeffs: Vec<Rat>) -> Result<Self> {
        check_ell(ell)?;
        let phi = euler_phi(ell) as usize;
        if coeffs.len() != phi {
            return Err(Error::invalid_parameter(format!(
                "expected {phi} coefficients for ell={ell}, got {}",
                coeffs.len()
            )));
        }
        Ok(CycloNum { ell, coeffs })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element lies in ℚ.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_ell(&self, other: &Self) {
        assert_eq!(
            self.ell, other.ell,
            "cyclotomic arithmetic across distinct conductors"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ell(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNum {
            ell: self.ell,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ell(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloNum {
            ell: self.ell,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycloNum {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ell(other);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        let modulus = cyclotomic_poly(self.ell);
        let (_, rem) = poly_divmod(&prod, &modulus);
        let phi = euler_phi(self.ell) as usize;
        let mut coeffs = vec![Rat::zero(); phi];
        for (i, c) in rem.into_iter().enumerate() {
            coeffs[i] = c;
        }
        CycloNum {
            ell: self.ell,
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycloNum {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ\[q\]
    /// against Φ_ℓ.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let modulus = cyclotomic_poly(self.ell);
        // extended gcd of (self, Φ_ℓ): r0 = self, r1 = Φ, track s with r = s*self mod Φ
        let mut r0: Vec<Rat> = self.coeffs.clone();
        poly_trim(&mut r0);
        let mut r1: Vec<Rat> = (*modulus).clone();
        let mut s0 = vec![Rat::one()];
        let mut s1 = vec![Rat::zero()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s_new = vec![Rat::zero(); s0.len().max(qs.len())];
            for (i, c) in s0.iter().enumerate() {
                s_new[i] += c;
            }
            for (i, c) in qs.iter().enumerate() {
                s_new[i] -= c;
            }
            poly_trim(&mut s_new);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_new;
        }
        // r0 is the gcd, a nonzero constant since Φ_ℓ is irreducible over ℚ
        assert!(
            poly_deg(&r0) == 0 && !r0[0].is_zero(),
            "gcd with cyclotomic polynomial must be a unit"
        );
        let c = r0[0].clone();
        let phi = euler_phi(self.ell) as usize;
        let mut coeffs = vec![Rat::zero(); phi];
        for (i, v) in s0.into_iter().enumerate() {
            coeffs[i] = v / &c;
        }
        Ok(CycloNum {
            ell: self.ell,
            coeffs,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = CycloNum::one(self.ell)?;
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Numeric embedding with ε ↦ exp(2πi/ℓ).
    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / (self.ell as f64);
            acc += rat_to_f64(c) * Complex64::new(angle.cos(), angle.sin());
        }
        acc
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Direct conversion can overflow for huge numerators; split into
    // integer part plus remainder so desk-scale values stay accurate.
    r.to_f64().unwrap_or_else(|| {
        let trunc = r.trunc();
        let frac = r - &trunc;
        trunc.numer().to_f64().unwrap_or(f64::INFINITY) + frac.to_f64().unwrap_or(0.0)
    })
}

/// Primitive ℓ-th root of unity to the given power: `cyclo(ell, power)`.
pub fn cyclo(ell: u32, power: i64) -> Result<CycloNum> {
    CycloNum::root(ell, power)
}

/// |r| for a rational, used by probes that rank exact values.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys_small() {
        // Φ_3 = q^2 + q + 1
        let p3 = cyclotomic_poly(3);
        assert_eq!(p3.as_slice(), &[rat_i64(1), rat_i64(1), rat_i64(1)]);
        // Φ_5 = q^4 + q^3 + q^2 + q + 1
        let p5 = cyclotomic_poly(5);
        assert_eq!(p5.len(), 5);
        assert!(p5.iter().all(|c| c.is_one()));
        // Φ_9 = q^6 + q^3 + 1
        let p9 = cyclotomic_poly(9);
        assert_eq!(
            p9.as_slice(),
            &[
                rat_i64(1),
                rat_i64(0),
                rat_i64(0),
                rat_i64(1),
                rat_i64(0),
                rat_i64(0),
                rat_i64(1)
            ]
        );
        // Φ_15 has degree 8
        assert_eq!(cyclotomic_poly(15).len(), 9);
    }

    #[test]
    fn root_powers_wrap() {
        // ε^ℓ = 1
        assert!(cyclo(3, 3).unwrap().is_one());
        // exponent mod ℓ
        assert_eq!(cyclo(5, 7).unwrap(), cyclo(5, 2).unwrap());
        assert_eq!(cyclo(5, -1).unwrap(), cyclo(5, 4).unwrap());
    }

    #[test]
    fn phi3_reduction() {
        // ε + ε² = −1 for ℓ = 3
        let s = cyclo(3, 1).unwrap().add(&cyclo(3, 2).unwrap());
        assert_eq!(s, CycloNum::from_rat(3, &rat_i64(-1)).unwrap());
    }

    #[test]
    fn root_sum_vanishes() {
        for ell in [3u32, 5, 7, 9, 15] {
            let mut acc = CycloNum::zero(ell).unwrap();
            for k in 0..ell {
                acc = acc.add(&cyclo(ell, k as i64).unwrap());
            }
            assert!(
                acc.is_zero(),
                "sum of all ℓ-th roots must vanish, ell={ell}"
            );
        }
    }

    #[test]
    fn inverse_of_root() {
        // ε·ε² = 1 at ℓ = 3
        let inv = cyclo(3, 1).unwrap().inv().unwrap();
        assert_eq!(inv, cyclo(3, 2).unwrap());
    }

    #[test]
    fn inverse_one_plus_eps() {
        // Extended-Euclid oracle check: (1+ε)·(1+ε)⁻¹ = 1, and the inverse
        // equals −ε at ℓ = 3 (since (1+ε)(−ε) = −ε − ε² = 1).
        let e = cyclo(3, 1).unwrap();
        let x = CycloNum::one(3).unwrap().add(&e);
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
        assert_eq!(inv, e.neg());
    }

    #[test]
    fn inverse_random_elements() {
        // a · a⁻¹ = 1 exactly for a sample of nonzero elements
        for ell in [3u32, 5, 9] {
            let phi = euler_phi(ell) as usize;
            for seed in 0..8i64 {
                let coeffs: Vec<Rat> = (0..phi)
                    .map(|i| rat_i64((seed * 7 + i as i64 * 3) % 5 - 2))
                    .collect();
                let a = CycloNum::from_coeffs(ell, coeffs).unwrap();
                if a.is_zero() {
                    continue;
                }
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn even_or_small_ell_rejected() {
        assert!(CycloNum::zero(4).is_err());
        assert!(CycloNum::zero(1).is_err());
        assert!(cyclo(2, 1).is_err());
    }

    #[test]
    fn embed_primitive_root() {
        let z = cyclo(3, 1).unwrap().embed();
        assert!((z.re + 0.5).abs() < 1e-12);
        assert!((z.im - 0.8660254037844386).abs() < 1e-12);
        assert!((cyclo(7, 1).unwrap().embed().norm() - 1.0).abs() < 1e-12);
    }
}
