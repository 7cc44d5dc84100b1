//! Analytic inner (conformal) radii for catalog shapes.
//!
//! For a simply connected domain `B` with interior point `a`, the inner
//! radius `r(B, a)` is the derivative scale `|f'(0)|` of the conformal map
//! `f` of the unit disk onto `B` with `f(0) = a`; equivalently `exp` of the
//! Robin constant of the Green's function of `B` at `a`. Under a conformal
//! map `T` it transports as `r(T(B), T(a)) = |T'(a)| · r(B, a)`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{CPoint, MobiusMap, PlanarDomain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    Analytic,
    Transported,
    MonteCarlo,
}

/// An inner-radius value together with how it was obtained. `stderr_log` is
/// the standard error of `ln value`; it is zero unless the method is
/// `MonteCarlo`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadiusValue {
    pub value: f64,
    pub method: RadiusMethod,
    pub stderr_log: f64,
}

impl RadiusValue {
    pub fn analytic(value: f64) -> Self {
        RadiusValue {
            value,
            method: RadiusMethod::Analytic,
            stderr_log: 0.0,
        }
    }
}

/// `w^s` on the branch where `arg w` is taken in `(-π, π)`; magnitude and
/// derivative helpers for the sector power map.
pub(crate) fn power_map(w: Complex64, s: f64) -> Complex64 {
    Complex64::from_polar(w.norm().powf(s), s * w.arg())
}

/// Exact inner radius for shapes in the analytic catalog (Mobius images of
/// catalog shapes included, via transport).
///
/// Annular sectors carry no closed form; use the walk-on-spheres estimator
/// for them.
pub fn inner_radius_analytic(domain: &PlanarDomain, a: CPoint) -> Result<RadiusValue> {
    let resolved = domain.resolve();
    if !resolved.contains(a) {
        return Err(Error::NotInterior);
    }
    match &resolved {
        PlanarDomain::Disk { center, radius } => {
            let z = a.as_complex().expect("disk points are finite");
            let d2 = (z - center).norm_sqr();
            Ok(RadiusValue::analytic((radius * radius - d2) / radius))
        }
        PlanarDomain::ExteriorDisk { center, radius } => match a {
            CPoint::Infinity => Ok(RadiusValue::analytic(*radius)),
            CPoint::Finite(z) => {
                let d2 = (z - center).norm_sqr();
                Ok(RadiusValue::analytic((d2 - radius * radius) / radius))
            }
        },
        PlanarDomain::HalfPlane { .. } => {
            Ok(RadiusValue::analytic(2.0 * resolved.dist_to_boundary(a)))
        }
        PlanarDomain::Sector {
            vertex,
            bisector,
            opening,
        } => {
            // Power map to the right half-plane, then transport back.
            let z = a.as_complex().expect("sector points are finite");
            let w = (z - vertex) * Complex64::from_polar(1.0, -bisector);
            let s = PI / opening;
            let zeta = power_map(w, s);
            let half_plane_radius = 2.0 * zeta.re;
            let derivative = s * w.norm().powf(s - 1.0);
            Ok(RadiusValue::analytic(half_plane_radius / derivative))
        }
        PlanarDomain::AnnularSector { .. } => Err(Error::NoAnalyticFormula("annular_sector")),
        PlanarDomain::MobiusImage { base, map } => {
            let z = map.inverse().apply(a);
            let z = match z {
                CPoint::Finite(z) => z,
                CPoint::Infinity => {
                    return Err(Error::UnsupportedAtInfinity(
                        "Mobius image does not resolve to an exterior disk".into(),
                    ))
                }
            };
            let base_value = inner_radius_analytic(base, CPoint::Finite(z))?;
            let scale = map.derivative_abs(z)?;
            Ok(RadiusValue {
                value: base_value.value * scale,
                method: RadiusMethod::Transported,
                stderr_log: base_value.stderr_log,
            })
        }
    }
}

/// Conformal transport `r ↦ r · |T'(a)|` of a known radius at `a` through a
/// Mobius map.
pub fn transport_radius(base: &RadiusValue, map: &MobiusMap, a: CPoint) -> Result<RadiusValue> {
    let z = a.as_complex().ok_or_else(|| {
        Error::UnsupportedAtInfinity("transport requires a finite evaluation point".into())
    })?;
    let scale = map.derivative_abs(z)?;
    Ok(RadiusValue {
        value: base.value * scale,
        method: RadiusMethod::Transported,
        stderr_log: base.stderr_log,
    })
}
