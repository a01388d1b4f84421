//! Z₀-characters of U_ε(sl₂): the values (x, z, y) of the central
//! elements E^ℓ, K^ℓ, F^ℓ, and the group law on them induced by the
//! coproduct (Z₀ is the coordinate ring of the dual group, so characters
//! multiply).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Character of Z₀ = ℂ[E^ℓ, K^{±ℓ}, F^ℓ]: x = χ(E^ℓ), z = χ(K^ℓ) ≠ 0,
/// y = χ(F^ℓ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralCharZ0 {
    pub x: Complex64,
    pub z: Complex64,
    pub y: Complex64,
}

impl CentralCharZ0 {
    pub fn new(x: Complex64, z: Complex64, y: Complex64) -> Result<Self> {
        if z.norm() == 0.0 {
            return Err(Error::invalid_parameter("character needs z != 0"));
        }
        Ok(CentralCharZ0 { x, z, y })
    }

    /// Identity of the character group: (0, 1, 0).
    pub fn identity() -> Self {
        CentralCharZ0 {
            x: Complex64::new(0.0, 0.0),
            z: Complex64::new(1.0, 0.0),
            y: Complex64::new(0.0, 0.0),
        }
    }

    pub fn close_to(&self, other: &CentralCharZ0, tol: f64) -> bool {
        (self.x - other.x).norm() <= tol * (1.0 + other.x.norm())
            && (self.z - other.z).norm() <= tol * (1.0 + other.z.norm())
            && (self.y - other.y).norm() <= tol * (1.0 + other.y.norm())
    }
}

impl std::fmt::Display for CentralCharZ0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(x={:+.6}{:+.6}i, z={:+.6}{:+.6}i, y={:+.6}{:+.6}i)",
            self.x.re, self.x.im, self.z.re, self.z.im, self.y.re, self.y.im
        )
    }
}

/// Group law read off the primitive form of Δ on ℓ-th powers:
/// Δ(E^ℓ) = E^ℓ⊗1 + K^ℓ⊗E^ℓ, Δ(K^ℓ) = K^ℓ⊗K^ℓ,
/// Δ(F^ℓ) = F^ℓ⊗K^{−ℓ} + 1⊗F^ℓ give
/// (x, z, y)·(x′, z′, y′) = (x + z·x′, z·z′, y/z′ + y′).
pub fn z0_product(a: &CentralCharZ0, b: &CentralCharZ0) -> CentralCharZ0 {
    CentralCharZ0 {
        x: a.x + a.z * b.x,
        z: a.z * b.z,
        y: a.y / b.z + b.y,
    }
}

/// Seeded sample from the generic locus: |x|, |y| uniform on the annulus
/// 0.5 ≤ |·| ≤ 2, z on the same annulus with resampling while
/// |z^ℓ − 1| < 0.1 (staying clear of the ramified z-locus).
pub fn random_generic_char(ell: u32, seed: u64) -> CentralCharZ0 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| -> Complex64 {
        let r = rng.gen_range(0.5..2.0);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, theta)
    };
    let x = sample(&mut rng);
    let y = sample(&mut rng);
    let z = loop {
        let z = sample(&mut rng);
        if (z.powu(ell) - Complex64::new(1.0, 0.0)).norm() >= 0.1 {
            break z;
        }
    };
    CentralCharZ0 { x, z, y }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_element() {
        let chi = CentralCharZ0::new(c(1.5, 0.2), c(0.3, -0.7), c(-2.0, 0.1)).unwrap();
        let e = CentralCharZ0::identity();
        let prod = z0_product(&chi, &e);
        assert!((prod.x - chi.x).norm() < 1e-14);
        assert!((prod.z - chi.z).norm() < 1e-14);
        assert!((prod.y - chi.y).norm() < 1e-14);
        let prod = z0_product(&e, &chi);
        assert!((prod.x - chi.x).norm() < 1e-14);
        assert!((prod.y - chi.y).norm() < 1e-14);
    }

    #[test]
    fn coproduct_example() {
        // (1,1,0)·(0,1,1) = (1,1,1)
        let a = CentralCharZ0::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let b = CentralCharZ0::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let p = z0_product(&a, &b);
        assert!((p.x - c(1.0, 0.0)).norm() < 1e-14);
        assert!((p.z - c(1.0, 0.0)).norm() < 1e-14);
        assert!((p.y - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn associativity_on_random_triples() {
        for seed in 0..100 {
            let a = random_generic_char(3, seed);
            let b = random_generic_char(3, seed + 1000);
            let ch = random_generic_char(3, seed + 2000);
            let lhs = z0_product(&z0_product(&a, &b), &ch);
            let rhs = z0_product(&a, &z0_product(&b, &ch));
            assert!((lhs.x - rhs.x).norm() < 1e-12);
            assert!((lhs.z - rhs.z).norm() < 1e-12);
            assert!((lhs.y - rhs.y).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_via_antipode_shape() {
        // (x,z,y)⁻¹ = (−x/z, 1/z, −y·z): check the product is identity
        let chi = random_generic_char(5, 9);
        let inv = CentralCharZ0 {
            x: -chi.x / chi.z,
            z: 1.0 / chi.z,
            y: -chi.y * chi.z,
        };
        let p = z0_product(&chi, &inv);
        let e = CentralCharZ0::identity();
        assert!((p.x - e.x).norm() < 1e-12);
        assert!((p.z - e.z).norm() < 1e-12);
        assert!((p.y - e.y).norm() < 1e-12);
    }

    #[test]
    fn sampler_is_deterministic_and_generic() {
        let a = random_generic_char(5, 42);
        let b = random_generic_char(5, 42);
        assert_eq!(a, b);
        for seed in 0..200 {
            let chi = random_generic_char(5, seed);
            assert!(chi.x.norm() >= 0.5 && chi.x.norm() <= 2.0);
            assert!(chi.y.norm() >= 0.5 && chi.y.norm() <= 2.0);
            assert!(chi.z.norm() > 0.0);
            assert!((chi.z.powu(5) - c(1.0, 0.0)).norm() >= 0.1);
        }
    }
}
