//! m-ray point systems in the plane and the functionals `χ`, `α` and `L^(γ)`.
//!
//! A ray system is an ordered tuple of nonzero points `a_1, …, a_m` with
//! `0 = arg a_1 < arg a_2 < … < arg a_m < 2π`. The normalized angular gaps
//! `α_k = (1/π) arg(a_{k+1}/a_k)` (cyclically closed) always sum to `2`.
//! The functional
//!
//! `L^(γ) = ∏_k [χ(|a_k/a_{k+1}|^{1/(2α_k)})]^{1−γα_k²/2} · ∏_k |a_k|^{1+γ(α_k+α_{k−1})/4}`
//!
//! with `χ(t) = (t + 1/t)/2` and the cyclic conventions `a_{m+1} = a_1`,
//! `α_0 = α_m`, appears in the hypotheses of the extremal bound: admissible
//! configurations need `L^(γ) = L^(0) = 1` in every coordinate.
//!
//! Everything is evaluated in log space (`ln χ(e^x) = ln cosh x`), so widely
//! spread moduli neither overflow nor lose the leading digits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::geom::normalize_arg;

const ARG_TOL: f64 = 1e-12;

/// `χ(t) = (t + 1/t)/2` for `t > 0`; equals `cosh(ln t)`, so `χ ≥ 1` with
/// equality only at `t = 1`.
pub fn chi(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonpositiveArg(t));
    }
    Ok(ln_chi(t.ln()).exp())
}

/// `ln χ(e^x) = ln cosh x`, evaluated without overflow for any `x`.
fn ln_chi(x: f64) -> f64 {
    let x = x.abs();
    x - LN_2 + (-2.0 * x).exp().ln_1p()
}

/// An ordered tuple of `m ≥ 2` nonzero planar points with strictly
/// increasing arguments, the first on the positive real axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RaySystemRaw", into = "RaySystemRaw")]
pub struct RaySystem {
    points: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RaySystemRaw {
    points: Vec<Complex64>,
}

impl From<RaySystem> for RaySystemRaw {
    fn from(s: RaySystem) -> Self {
        RaySystemRaw { points: s.points }
    }
}

impl TryFrom<RaySystemRaw> for RaySystem {
    type Error = Error;
    fn try_from(raw: RaySystemRaw) -> Result<Self> {
        RaySystem::new(raw.points)
    }
}

impl RaySystem {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidRaySystem(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        for (k, a) in points.iter().enumerate() {
            if !a.is_finite() || a.norm() == 0.0 {
                return Err(Error::InvalidRaySystem(format!(
                    "point {} must be finite and nonzero",
                    k + 1
                )));
            }
        }
        let args: Vec<f64> = points.iter().map(|a| normalize_arg(a.arg())).collect();
        if args[0].min(2.0 * PI - args[0]) > ARG_TOL {
            return Err(Error::InvalidRaySystem(format!(
                "first point must lie on the positive real axis, arg = {}",
                args[0]
            )));
        }
        for k in 1..args.len() {
            let prev = if k == 1 { 0.0 } else { args[k - 1] };
            if args[k] <= prev + ARG_TOL {
                return Err(Error::InvalidRaySystem(format!(
                    "arguments must strictly increase: arg a_{} = {} after {}",
                    k + 1,
                    args[k],
                    prev
                )));
            }
        }
        Ok(RaySystem { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Arguments normalized to `[0, 2π)`, with the first snapped to `0`.
    fn args(&self) -> Vec<f64> {
        let mut args: Vec<f64> = self.points.iter().map(|a| normalize_arg(a.arg())).collect();
        args[0] = 0.0;
        args
    }
}

/// The normalized angular gaps `α_k = (1/π) arg(a_{k+1}/a_k)`, cyclically
/// closed (`a_{m+1} = a_1`). All entries are positive and they sum to `2`.
pub fn alpha_vector(s: &RaySystem) -> Vec<f64> {
    let args = s.args();
    let m = args.len();
    let mut alpha = Vec::with_capacity(m);
    for k in 0..m - 1 {
        alpha.push((args[k + 1] - args[k]) / PI);
    }
    alpha.push((2.0 * PI - args[m - 1]) / PI);
    alpha
}

/// `ln L^(γ)` of the system; the building block shared by [`l_gamma`] and
/// [`normalize_l0`].
fn log_l_gamma(s: &RaySystem, gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "gamma must be finite and nonnegative, got {gamma}"
        )));
    }
    let alpha = alpha_vector(s);
    let m = s.len();
    let log_mod: Vec<f64> = s.points.iter().map(|a| a.norm().ln()).collect();
    let mut total = 0.0;
    for k in 0..m {
        let next = (k + 1) % m;
        let prev = (k + m - 1) % m;
        // ln t_k = (ln|a_k| − ln|a_{k+1}|) / (2 α_k).
        let log_t = (log_mod[k] - log_mod[next]) / (2.0 * alpha[k]);
        total += (1.0 - gamma * alpha[k] * alpha[k] / 2.0) * ln_chi(log_t);
        total += (1.0 + gamma * (alpha[k] + alpha[prev]) / 4.0) * log_mod[k];
    }
    if !total.is_finite() {
        return Err(Error::Overflow(
            "ray-system functional overflowed in log space".into(),
        ));
    }
    Ok(total)
}

/// The functional `L^(γ)` of a planar ray system.
pub fn l_gamma(s: &RaySystem, gamma: f64) -> Result<f64> {
    let log = log_l_gamma(s, gamma)?;
    let value = log.exp();
    if !value.is_finite() || value == 0.0 {
        return Err(Error::Overflow(format!(
            "L functional leaves the double range: ln L = {log}"
        )));
    }
    Ok(value)
}

/// Rescales the system by `t = L^(0)^{-1/m}`, after which `L^(0) = 1`.
/// Arguments, hence the `α` vector, are unchanged; idempotent.
pub fn normalize_l0(s: &RaySystem) -> Result<RaySystem> {
    let log = log_l_gamma(s, 0.0)?;
    let t = (-log / s.len() as f64).exp();
    RaySystem::new(s.points.iter().map(|a| a * t).collect())
}

/// A ray system in C^n: `m` points whose p-th coordinates form a planar ray
/// system for every `p`, anchored so that the first point is `(1, 1, …, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyRaySystemRaw", into = "PolyRaySystemRaw")]
pub struct PolyRaySystem {
    columns: Vec<RaySystem>,
}

#[derive(Serialize, Deserialize)]
struct PolyRaySystemRaw {
    columns: Vec<RaySystem>,
}

impl From<PolyRaySystem> for PolyRaySystemRaw {
    fn from(s: PolyRaySystem) -> Self {
        PolyRaySystemRaw { columns: s.columns }
    }
}

impl TryFrom<PolyRaySystemRaw> for PolyRaySystem {
    type Error = Error;
    fn try_from(raw: PolyRaySystemRaw) -> Result<Self> {
        PolyRaySystem::new(raw.columns)
    }
}

impl PolyRaySystem {
    /// Builds from per-coordinate columns, each of the same length `m`.
    pub fn new(columns: Vec<RaySystem>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidRaySystem(
                "need at least one coordinate".into(),
            ));
        }
        let m = columns[0].len();
        for (p, col) in columns.iter().enumerate() {
            if col.len() != m {
                return Err(Error::InvalidRaySystem(format!(
                    "coordinate {} has {} points, expected {m}",
                    p + 1,
                    col.len()
                )));
            }
            let first = col.points()[0];
            if (first - Complex64::new(1.0, 0.0)).norm() > ARG_TOL {
                return Err(Error::InvalidRaySystem(format!(
                    "coordinate {}: first point must be 1, got {first}",
                    p + 1
                )));
            }
        }
        Ok(PolyRaySystem { columns })
    }

    /// Builds from `m` points of C^n, each given by its `n` coordinates.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidRaySystem("empty point grid".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidRaySystem(
                "all points must have the same number of coordinates".into(),
            ));
        }
        let columns = (0..n)
            .map(|p| RaySystem::new(rows.iter().map(|r| r[p]).collect()))
            .collect::<Result<Vec<_>>>()?;
        PolyRaySystem::new(columns)
    }

    pub fn columns(&self) -> &[RaySystem] {
        &self.columns
    }

    /// Number of points `m`.
    pub fn num_points(&self) -> usize {
        self.columns[0].len()
    }

    /// Ambient dimension `n`.
    pub fn num_coords(&self) -> usize {
        self.columns.len()
    }
}

/// Per-coordinate `L^(γ)` values of a C^n ray system.
pub fn l_gamma_vector(ps: &PolyRaySystem, gamma: f64) -> Result<Vec<f64>> {
    ps.columns().iter().map(|col| l_gamma(col, gamma)).collect()
}

/// Residuals of the admissibility normalizations `L^(γ) = 1` and
/// `L^(0) = 1`, coordinate by coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationCheck {
    pub ok: bool,
    /// `L^(γ) − 1` per coordinate.
    pub residuals_gamma: Vec<f64>,
    /// `L^(0) − 1` per coordinate.
    pub residuals_zero: Vec<f64>,
}

/// Checks that every coordinate satisfies both `L^(γ) = 1` and `L^(0) = 1`
/// within `1e-9`.
pub fn check_theorem_normalization(ps: &PolyRaySystem, gamma: f64) -> Result<NormalizationCheck> {
    let at_gamma = l_gamma_vector(ps, gamma)?;
    let at_zero = l_gamma_vector(ps, 0.0)?;
    let residuals_gamma: Vec<f64> = at_gamma.iter().map(|v| v - 1.0).collect();
    let residuals_zero: Vec<f64> = at_zero.iter().map(|v| v - 1.0).collect();
    let ok = residuals_gamma
        .iter()
        .chain(&residuals_zero)
        .all(|r| r.abs() <= 1e-9);
    Ok(NormalizationCheck {
        ok,
        residuals_gamma,
        residuals_zero,
    })
}

/// The `m`-th roots of unity as a ray system: the equiangular unit-modulus
/// configuration satisfying both normalizations exactly.
pub fn roots_of_unity(m: usize) -> Result<RaySystem> {
    RaySystem::new(
        (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
            .collect(),
    )
}
