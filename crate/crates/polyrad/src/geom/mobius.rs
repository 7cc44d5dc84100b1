use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::point::CPoint;

/// A fractional linear transformation `z ↦ (az + b)/(cz + d)` with `ad − bc ≠ 0`,
/// acting on the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = MobiusMap { a, b, c, d };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.det().norm() == 0.0 || !self.det().is_finite() {
            return Err(Error::DegenerateMobius);
        }
        Ok(())
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        MobiusMap {
            a: Complex64::new(0.0, 0.0),
            b: Complex64::new(1.0, 0.0),
            c: Complex64::new(1.0, 0.0),
            d: Complex64::new(0.0, 0.0),
        }
    }

    /// `z ↦ k(z − z0)`, an affine similarity.
    pub fn similarity(k: Complex64, z0: Complex64) -> Result<Self> {
        MobiusMap::new(
            k,
            -k * z0,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// The preimage of infinity: `-d/c`, or infinity itself when `c = 0`.
    pub fn pole(&self) -> CPoint {
        if self.c.norm() == 0.0 {
            CPoint::Infinity
        } else {
            CPoint::Finite(-self.d / self.c)
        }
    }

    /// Total on the extended plane: the pole maps to infinity and infinity maps to `a/c`.
    pub fn apply(&self, z: CPoint) -> CPoint {
        match z {
            CPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    CPoint::Infinity
                } else {
                    CPoint::Finite((self.a * z + self.b) / den)
                }
            }
            CPoint::Infinity => {
                if self.c.norm() == 0.0 {
                    CPoint::Infinity
                } else {
                    CPoint::Finite(self.a / self.c)
                }
            }
        }
    }

    /// `|T'(z)| = |ad − bc| / |cz + d|²` at a finite non-pole point.
    pub fn derivative_abs(&self, z: Complex64) -> Result<f64> {
        let den = (self.c * z + self.d).norm_sqr();
        if den == 0.0 {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.det().norm() / den)
    }

    pub fn inverse(&self) -> Self {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Returns the composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_fixes_points() {
        let id = MobiusMap::identity();
        assert_eq!(id.apply(CPoint::new(3.0, 4.0)), CPoint::new(3.0, 4.0));
        assert_eq!(id.apply(CPoint::Infinity), CPoint::Infinity);
    }

    #[test]
    fn inversion_conventions() {
        let inv = MobiusMap::inversion();
        assert_eq!(inv.apply(CPoint::new(2.0, 0.0)), CPoint::new(0.5, 0.0));
        assert_eq!(inv.apply(CPoint::ZERO), CPoint::Infinity);
        assert_eq!(inv.apply(CPoint::Infinity), CPoint::new(0.0, 0.0));
    }

    #[test]
    fn degenerate_map_rejected() {
        assert!(matches!(
            MobiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)),
            Err(Error::DegenerateMobius)
        ));
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = MobiusMap::new(
                c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
                c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
                c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
                c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
            );
            let m = match m {
                Ok(m) => m,
                Err(_) => continue,
            };
            let z = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let round = m.inverse().apply(m.apply(CPoint::Finite(z)));
            let w = round.as_complex().expect("finite");
            assert!((w - z).norm() < 1e-12 * (1.0 + z.norm()));
        }
    }
}
