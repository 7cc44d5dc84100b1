use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::geom::point::{signed_angle, CPoint};
use crate::geom::shape::PlanarDomain;

/// Outcome of a pairwise disjointness query between two open domains.
///
/// Exact answers come from the shape catalog; for pairs without an exact
/// predicate a stratified rejection test runs and either finds an overlap
/// witness or reports `Inconclusive` with the sample count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Disjointness {
    Disjoint {
        exact: bool,
        samples: usize,
    },
    Overlapping {
        exact: bool,
        witness: Option<CPoint>,
    },
    Inconclusive {
        samples: usize,
    },
}

impl Disjointness {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Disjointness::Disjoint { .. })
    }
}

/// Distance from a point to the closure of a domain (zero inside or on the
/// boundary).
fn dist_to_closure(z: Complex64, s: &PlanarDomain) -> f64 {
    if s.contains(CPoint::Finite(z)) {
        0.0
    } else {
        s.dist_to_boundary(CPoint::Finite(z))
    }
}

/// Polar parameters of vertex-anchored shapes.
fn polar_params(s: &PlanarDomain) -> Option<(Complex64, f64, f64, f64, f64)> {
    match *s {
        PlanarDomain::Sector {
            vertex,
            bisector,
            opening,
        } => Some((vertex, bisector, opening, 0.0, f64::INFINITY)),
        PlanarDomain::AnnularSector {
            vertex,
            bisector,
            opening,
            inner_radius,
            outer_radius,
        } => Some((
            vertex,
            bisector,
            opening,
            inner_radius,
            outer_radius.unwrap_or(f64::INFINITY),
        )),
        _ => None,
    }
}

fn is_bounded(s: &PlanarDomain) -> bool {
    s.bounding_box().is_some()
}

/// One-sided exact predicates; `None` means "no exact rule from this side".
fn exact_rule(d1: &PlanarDomain, d2: &PlanarDomain) -> Option<Disjointness> {
    // A disk is disjoint from any catalog shape iff its center is at least a
    // radius away from the other shape's closure.
    if let PlanarDomain::Disk { center, radius } = d1 {
        let dist = dist_to_closure(*center, d2);
        // Tolerate rounding at exact tangency (open domains stay disjoint).
        let tol = 1e-12 * (1.0 + radius + center.norm());
        return Some(if dist >= *radius - tol {
            Disjointness::Disjoint {
                exact: true,
                samples: 0,
            }
        } else {
            Disjointness::Overlapping {
                exact: true,
                witness: None,
            }
        });
    }

    // Sectors and annular sectors sharing a vertex: compare angular and
    // radial intervals.
    if let (Some((v1, b1, o1, in1, out1)), Some((v2, b2, o2, in2, out2))) =
        (polar_params(d1), polar_params(d2))
    {
        if (v1 - v2).norm() <= 1e-12 * (1.0 + v1.norm()) {
            let radial_disjoint = out1 <= in2 || out2 <= in1;
            let half_sum = (o1 + o2) / 2.0;
            let delta = signed_angle(b2 - b1).abs();
            // Angular tangency (edge-sharing sectors) counts as disjoint.
            let tol = 1e-12;
            let angular_disjoint = delta >= half_sum - tol && delta <= TAU - half_sum + tol;
            return Some(if radial_disjoint || angular_disjoint {
                Disjointness::Disjoint {
                    exact: true,
                    samples: 0,
                }
            } else {
                Disjointness::Overlapping {
                    exact: true,
                    witness: None,
                }
            });
        }
        return None;
    }

    // The exterior of a disk misses exactly the shapes whose closure fits in
    // the closed disk; every unbounded shape meets it.
    if let PlanarDomain::ExteriorDisk { center, radius } = d1 {
        if !is_bounded(d2) {
            return Some(Disjointness::Overlapping {
                exact: true,
                witness: None,
            });
        }
        let reach = d2
            .boundary_arcs()
            .iter()
            .map(|a| a.max_dist(*center).expect("bounded shape has bounded arcs"))
            .fold(0.0f64, f64::max);
        return Some(if reach <= *radius {
            Disjointness::Disjoint {
                exact: true,
                samples: 0,
            }
        } else {
            Disjointness::Overlapping {
                exact: true,
                witness: None,
            }
        });
    }

    // Two half-planes are disjoint only when they face away from each other
    // with a nonnegative gap.
    if let (
        PlanarDomain::HalfPlane {
            boundary_point: b1,
            normal_angle: n1,
        },
        PlanarDomain::HalfPlane {
            boundary_point: b2,
            normal_angle: n2,
        },
    ) = (d1, d2)
    {
        let antiparallel = signed_angle(n2 - n1 - std::f64::consts::PI).abs() <= 1e-12;
        if !antiparallel {
            return Some(Disjointness::Overlapping {
                exact: true,
                witness: None,
            });
        }
        let gap = ((b2 - b1) * Complex64::from_polar(1.0, -n1)).re;
        return Some(if gap <= 0.0 {
            Disjointness::Disjoint {
                exact: true,
                samples: 0,
            }
        } else {
            Disjointness::Overlapping {
                exact: true,
                witness: None,
            }
        });
    }

    None
}

/// Decides whether two open domains are disjoint.
///
/// Exact for disks against anything, vertex-sharing (annular) sectors,
/// exteriors of disks, and half-plane pairs. Other pairs fall back to a
/// stratified grid over a bounding window with `samples` probe points:
/// finding a common point is a definite overlap, finding none is
/// `Inconclusive`.
pub fn domains_disjoint(d1: &PlanarDomain, d2: &PlanarDomain, samples: usize) -> Disjointness {
    let r1 = d1.resolve();
    let r2 = d2.resolve();
    if let Some(res) = exact_rule(&r1, &r2) {
        return res;
    }
    if let Some(res) = exact_rule(&r2, &r1) {
        return match res {
            Disjointness::Overlapping { exact, witness } => {
                Disjointness::Overlapping { exact, witness }
            }
            other => other,
        };
    }

    // Sampled rejection test over a bounding window.
    let window = match (r1.bounding_box(), r2.bounding_box()) {
        (Some((lo1, hi1)), Some((lo2, hi2))) => {
            let lo = Complex64::new(lo1.re.max(lo2.re), lo1.im.max(lo2.im));
            let hi = Complex64::new(hi1.re.min(hi2.re), hi1.im.min(hi2.im));
            if lo.re >= hi.re || lo.im >= hi.im {
                return Disjointness::Disjoint {
                    exact: true,
                    samples: 0,
                };
            }
            (lo, hi)
        }
        (Some(b), None) | (None, Some(b)) => b,
        (None, None) => {
            // No finite window is known; probe a fixed square around the
            // shapes' anchor points.
            let anchor = |s: &PlanarDomain| {
                s.boundary_arcs()
                    .first()
                    .map(|a| a.nearest_point(Complex64::new(0.0, 0.0)))
                    .unwrap_or_default()
            };
            let c = 0.5 * (anchor(&r1) + anchor(&r2));
            let span = 8.0 + anchor(&r1).norm().max(anchor(&r2).norm());
            (
                c - Complex64::new(span, span),
                c + Complex64::new(span, span),
            )
        }
    };

    let k = (samples.max(1) as f64).sqrt().ceil() as usize;
    let (lo, hi) = window;
    let step = Complex64::new((hi.re - lo.re) / k as f64, (hi.im - lo.im) / k as f64);
    for i in 0..k {
        for j in 0..k {
            let p = Complex64::new(
                lo.re + (i as f64 + 0.5) * step.re,
                lo.im + (j as f64 + 0.5) * step.im,
            );
            let cp = CPoint::Finite(p);
            if r1.contains(cp) && r2.contains(cp) {
                return Disjointness::Overlapping {
                    exact: false,
                    witness: Some(cp),
                };
            }
        }
    }
    Disjointness::Inconclusive { samples: k * k }
}
