//! Generators of admissible configurations: marked points at the m-th
//! roots of unity (which satisfy both L-normalizations exactly), with
//! non-overlapping domains built around them by construction.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{CPoint, PlanarDomain};
use crate::poly::{PolyConfiguration, PolyDomain, PolyPoint, RadiiMethod};
use crate::wos::WosParams;

fn roots_of_unity_points(m: usize, n: usize) -> Vec<PolyPoint> {
    let mut points = vec![PolyPoint::origin(n)];
    for k in 0..m {
        let a = Complex64::from_polar(1.0, TAU * k as f64 / m as f64);
        points.push(PolyPoint::new(vec![CPoint::Finite(a); n]));
    }
    points
}

/// An analytic-radius instance: `B_0 = Disk(0, ρ)^n` and `B_k` a disk about
/// the k-th root of unity in every coordinate.
///
/// Disk radii are `shrink · min(sin(π/m), 1 − ρ)`, scaled per coordinate by
/// a factor in `(1/2, 1]` for heterogeneity; both caps keep the disks
/// pairwise disjoint (adjacent roots are `2 sin(π/m)` apart) and clear of
/// `B_0`.
pub fn generate_disk_config(
    m: usize,
    n: usize,
    gamma: f64,
    rho: f64,
    shrink: f64,
) -> Result<PolyConfiguration> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidParams(format!(
            "need m >= 2 rays and n >= 1 coordinates, got m = {m}, n = {n}"
        )));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParams(format!(
            "rho must lie in (0, 1), got {rho}"
        )));
    }
    if !(shrink > 0.0 && shrink <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "shrink must lie in (0, 1], got {shrink}"
        )));
    }
    let cap = (PI / m as f64).sin().min(1.0 - rho);
    let radius_at = |p: usize| cap * shrink * (0.5 + 0.5 * (p + 1) as f64 / n as f64);

    let points = roots_of_unity_points(m, n);
    let mut domains = vec![PolyDomain::new(vec![
        PlanarDomain::disk(
            Complex64::new(0.0, 0.0),
            rho
        )?;
        n
    ])?];
    for k in 0..m {
        let a = Complex64::from_polar(1.0, TAU * k as f64 / m as f64);
        domains.push(PolyDomain::new(
            (0..n)
                .map(|p| PlanarDomain::disk(a, radius_at(p)))
                .collect::<Result<Vec<_>>>()?,
        )?);
    }
    PolyConfiguration::new(
        gamma,
        points,
        domains,
        RadiiMethod::Analytic,
        WosParams::default(),
    )
}

/// A Monte Carlo instance: `B_0 = Disk(0, ρ)^n` and `B_k` the unbounded
/// annular sector of opening `2π/m` bisected by the k-th root of unity,
/// with inner radius `ρ · s_p` in coordinate `p`.
///
/// The per-coordinate factor `s_p = 1 + (radial_scale − 1)·p/n` grades the
/// inner radii across coordinates; admissibility needs `radial_scale ≥ 1`
/// (so the sectors clear `B_0`) and `ρ · radial_scale < 1` (so the marked
/// points stay interior). Annular sectors have no closed-form radius, so
/// the configuration defaults to the walk-on-spheres method.
pub fn generate_sector_config(
    m: usize,
    n: usize,
    gamma: f64,
    rho: f64,
    radial_scale: f64,
) -> Result<PolyConfiguration> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidParams(format!(
            "need m >= 2 rays and n >= 1 coordinates, got m = {m}, n = {n}"
        )));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParams(format!(
            "rho must lie in (0, 1), got {rho}"
        )));
    }
    if !(radial_scale >= 1.0 && rho * radial_scale < 1.0) {
        return Err(Error::InvalidParams(format!(
            "radial_scale must satisfy 1 <= radial_scale < 1/rho, got {radial_scale}"
        )));
    }
    let scale_at = |p: usize| 1.0 + (radial_scale - 1.0) * p as f64 / n as f64;

    let points = roots_of_unity_points(m, n);
    let mut domains = vec![PolyDomain::new(vec![
        PlanarDomain::disk(
            Complex64::new(0.0, 0.0),
            rho
        )?;
        n
    ])?];
    for k in 0..m {
        let bisector = TAU * k as f64 / m as f64;
        domains.push(PolyDomain::new(
            (0..n)
                .map(|p| {
                    PlanarDomain::annular_sector(
                        Complex64::new(0.0, 0.0),
                        bisector,
                        TAU / m as f64,
                        rho * scale_at(p),
                        None,
                    )
                })
                .collect::<Result<Vec<_>>>()?,
        )?);
    }
    PolyConfiguration::new(
        gamma,
        points,
        domains,
        RadiiMethod::MonteCarlo,
        WosParams::default(),
    )
}
