use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// A point of the extended complex plane: a finite complex number or the
/// single point at infinity of the one-point compactification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "CPointRepr", try_from = "CPointRepr")]
pub enum CPoint {
    Finite(Complex64),
    Infinity,
}

impl CPoint {
    pub fn new(re: f64, im: f64) -> Self {
        CPoint::Finite(Complex64::new(re, im))
    }

    pub const ZERO: CPoint = CPoint::Finite(Complex64::new(0.0, 0.0));

    pub fn is_finite(&self) -> bool {
        matches!(self, CPoint::Finite(_))
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            CPoint::Finite(z) => Some(*z),
            CPoint::Infinity => None,
        }
    }

    /// Modulus; infinity reports `f64::INFINITY`.
    pub fn abs(&self) -> f64 {
        match self {
            CPoint::Finite(z) => z.norm(),
            CPoint::Infinity => f64::INFINITY,
        }
    }

    /// Argument in `[0, 2π)` for nonzero finite points.
    pub fn arg(&self) -> Option<f64> {
        match self {
            CPoint::Finite(z) if z.norm() > 0.0 => Some(normalize_arg(z.arg())),
            _ => None,
        }
    }
}

impl From<Complex64> for CPoint {
    fn from(z: Complex64) -> Self {
        CPoint::Finite(z)
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_arg(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t < 0.0 {
        t += TAU;
    }
    // `-1e-17 % TAU + TAU` rounds to TAU itself; fold it back.
    if t >= TAU {
        t = 0.0;
    }
    t
}

/// Signed angular difference folded into `(-π, π]`.
pub fn signed_angle(theta: f64) -> f64 {
    let t = normalize_arg(theta);
    if t > std::f64::consts::PI {
        t - TAU
    } else {
        t
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CPointRepr {
    Pair([f64; 2]),
    Tag(String),
}

impl From<CPoint> for CPointRepr {
    fn from(p: CPoint) -> Self {
        match p {
            CPoint::Finite(z) => CPointRepr::Pair([z.re, z.im]),
            CPoint::Infinity => CPointRepr::Tag("inf".to_owned()),
        }
    }
}

impl TryFrom<CPointRepr> for CPoint {
    type Error = String;

    fn try_from(r: CPointRepr) -> Result<Self, String> {
        match r {
            CPointRepr::Pair([re, im]) => Ok(CPoint::new(re, im)),
            CPointRepr::Tag(s) if s == "inf" => Ok(CPoint::Infinity),
            CPointRepr::Tag(s) => Err(format!("expected [re, im] or \"inf\", got \"{s}\"")),
        }
    }
}
