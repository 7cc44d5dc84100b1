use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::arc::{map_arc, BoundaryArc};
use crate::geom::mobius::MobiusMap;
use crate::geom::point::{signed_angle, CPoint};

/// A planar domain from the shape catalog.
///
/// All shapes are open, simply connected subsets of the extended plane.
/// Membership and exact boundary distance are available for every variant;
/// boundaries are unions of line segments and circular arcs, which Mobius
/// maps preserve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum PlanarDomain {
    Disk {
        center: Complex64,
        radius: f64,
    },
    /// `{ |z - center| > radius }`, including the point at infinity.
    ExteriorDisk {
        center: Complex64,
        radius: f64,
    },
    /// `{ Re((z - boundary_point) e^{-i normal_angle}) > 0 }`: the open side
    /// that the inward normal points into.
    HalfPlane {
        boundary_point: Complex64,
        normal_angle: f64,
    },
    /// Open infinite sector with apex `vertex`, axis direction `bisector`
    /// and angular width `opening ∈ (0, 2π]`.
    Sector {
        vertex: Complex64,
        bisector: f64,
        opening: f64,
    },
    /// Sector clipped to radii `inner_radius < |z - vertex| < outer_radius`;
    /// `outer_radius = None` means unbounded.
    AnnularSector {
        vertex: Complex64,
        bisector: f64,
        opening: f64,
        inner_radius: f64,
        #[serde(default)]
        outer_radius: Option<f64>,
    },
    /// The image of `base` under a nondegenerate Mobius map.
    MobiusImage {
        base: Box<PlanarDomain>,
        map: MobiusMap,
    },
}

impl PlanarDomain {
    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        let d = PlanarDomain::Disk { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn exterior_disk(center: Complex64, radius: f64) -> Result<Self> {
        let d = PlanarDomain::ExteriorDisk { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn half_plane(boundary_point: Complex64, normal_angle: f64) -> Result<Self> {
        let d = PlanarDomain::HalfPlane {
            boundary_point,
            normal_angle,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn sector(vertex: Complex64, bisector: f64, opening: f64) -> Result<Self> {
        let d = PlanarDomain::Sector {
            vertex,
            bisector,
            opening,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn annular_sector(
        vertex: Complex64,
        bisector: f64,
        opening: f64,
        inner_radius: f64,
        outer_radius: Option<f64>,
    ) -> Result<Self> {
        let d = PlanarDomain::AnnularSector {
            vertex,
            bisector,
            opening,
            inner_radius,
            outer_radius,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn mobius_image(base: PlanarDomain, map: MobiusMap) -> Result<Self> {
        let d = PlanarDomain::MobiusImage {
            base: Box::new(base),
            map,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn shape_name(&self) -> &'static str {
        match self {
            PlanarDomain::Disk { .. } => "disk",
            PlanarDomain::ExteriorDisk { .. } => "exterior_disk",
            PlanarDomain::HalfPlane { .. } => "half_plane",
            PlanarDomain::Sector { .. } => "sector",
            PlanarDomain::AnnularSector { .. } => "annular_sector",
            PlanarDomain::MobiusImage { .. } => "mobius_image",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDomain(msg));
        match self {
            PlanarDomain::Disk { center, radius }
            | PlanarDomain::ExteriorDisk { center, radius } => {
                if !center.is_finite() || !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!(
                        "{}: radius must be positive and finite",
                        self.shape_name()
                    ));
                }
            }
            PlanarDomain::HalfPlane {
                boundary_point,
                normal_angle,
            } => {
                if !boundary_point.is_finite() || !normal_angle.is_finite() {
                    return bad("half_plane: parameters must be finite".into());
                }
            }
            PlanarDomain::Sector {
                vertex,
                bisector,
                opening,
            } => {
                if !vertex.is_finite() || !bisector.is_finite() {
                    return bad("sector: parameters must be finite".into());
                }
                if !(*opening > 0.0 && *opening <= TAU) {
                    return bad(format!(
                        "sector: opening must lie in (0, 2π], got {opening}"
                    ));
                }
            }
            PlanarDomain::AnnularSector {
                vertex,
                bisector,
                opening,
                inner_radius,
                outer_radius,
            } => {
                if !vertex.is_finite() || !bisector.is_finite() {
                    return bad("annular_sector: parameters must be finite".into());
                }
                if !(*opening > 0.0 && *opening <= TAU) {
                    return bad(format!(
                        "annular_sector: opening must lie in (0, 2π], got {opening}"
                    ));
                }
                if !(*inner_radius >= 0.0 && inner_radius.is_finite()) {
                    return bad("annular_sector: inner radius must be nonnegative".into());
                }
                if let Some(outer) = outer_radius {
                    if !(outer.is_finite() && *outer > *inner_radius) {
                        return bad(
                            "annular_sector: outer radius must exceed the inner radius".into()
                        );
                    }
                }
            }
            PlanarDomain::MobiusImage { base, map } => {
                map.validate()?;
                base.validate()?;
            }
        }
        Ok(())
    }

    /// Interior membership.
    pub fn contains(&self, z: CPoint) -> bool {
        match self {
            PlanarDomain::Disk { center, radius } => match z {
                CPoint::Finite(z) => (z - center).norm() < *radius,
                CPoint::Infinity => false,
            },
            PlanarDomain::ExteriorDisk { center, radius } => match z {
                CPoint::Finite(z) => (z - center).norm() > *radius,
                CPoint::Infinity => true,
            },
            PlanarDomain::HalfPlane {
                boundary_point,
                normal_angle,
            } => match z {
                CPoint::Finite(z) => {
                    ((z - boundary_point) * Complex64::from_polar(1.0, -normal_angle)).re > 0.0
                }
                CPoint::Infinity => false,
            },
            PlanarDomain::Sector {
                vertex,
                bisector,
                opening,
            } => match z {
                CPoint::Finite(z) => {
                    let v = z - vertex;
                    v.norm() > 0.0 && signed_angle(v.arg() - bisector).abs() < opening / 2.0
                }
                CPoint::Infinity => false,
            },
            PlanarDomain::AnnularSector {
                vertex,
                bisector,
                opening,
                inner_radius,
                outer_radius,
            } => match z {
                CPoint::Finite(z) => {
                    let v = z - vertex;
                    let rho = v.norm();
                    rho > *inner_radius
                        && outer_radius.is_none_or(|outer| rho < outer)
                        && signed_angle(v.arg() - bisector).abs() < opening / 2.0
                }
                CPoint::Infinity => false,
            },
            PlanarDomain::MobiusImage { base, map } => base.contains(map.inverse().apply(z)),
        }
    }

    /// Boundary pieces as segments and circular arcs.
    pub fn boundary_arcs(&self) -> Vec<BoundaryArc> {
        match self {
            PlanarDomain::Disk { center, radius }
            | PlanarDomain::ExteriorDisk { center, radius } => {
                vec![BoundaryArc::full_circle(*center, *radius)]
            }
            PlanarDomain::HalfPlane {
                boundary_point,
                normal_angle,
            } => vec![BoundaryArc::line(*boundary_point, normal_angle + PI / 2.0)],
            PlanarDomain::Sector {
                vertex,
                bisector,
                opening,
            } => {
                if *opening >= TAU {
                    // Slit plane: the two edges coincide in one cut ray.
                    vec![BoundaryArc::ray(*vertex, bisector + PI)]
                } else {
                    vec![
                        BoundaryArc::ray(*vertex, bisector - opening / 2.0),
                        BoundaryArc::ray(*vertex, bisector + opening / 2.0),
                    ]
                }
            }
            PlanarDomain::AnnularSector {
                vertex,
                bisector,
                opening,
                inner_radius,
                outer_radius,
            } => {
                let mut arcs = Vec::new();
                let edge = |angle: f64| BoundaryArc::Segment {
                    origin: *vertex,
                    dir: Complex64::from_polar(1.0, angle),
                    t0: *inner_radius,
                    t1: outer_radius.unwrap_or(f64::INFINITY),
                };
                if *opening >= TAU {
                    arcs.push(edge(bisector + PI));
                } else {
                    arcs.push(edge(bisector - opening / 2.0));
                    arcs.push(edge(bisector + opening / 2.0));
                }
                if *inner_radius > 0.0 {
                    arcs.push(BoundaryArc::CircleArc {
                        center: *vertex,
                        radius: *inner_radius,
                        start: bisector - opening / 2.0,
                        sweep: *opening,
                    });
                }
                if let Some(outer) = outer_radius {
                    arcs.push(BoundaryArc::CircleArc {
                        center: *vertex,
                        radius: *outer,
                        start: bisector - opening / 2.0,
                        sweep: *opening,
                    });
                }
                arcs
            }
            PlanarDomain::MobiusImage { base, map } => base
                .boundary_arcs()
                .iter()
                .flat_map(|arc| map_arc(arc, map))
                .collect(),
        }
    }

    /// Euclidean distance to the boundary set; zero exactly on the boundary.
    /// For the point at infinity: zero when the boundary reaches infinity.
    pub fn dist_to_boundary(&self, z: CPoint) -> f64 {
        let arcs = self.boundary_arcs();
        match z {
            CPoint::Finite(z) => arcs.iter().map(|a| a.dist(z)).fold(f64::INFINITY, f64::min),
            CPoint::Infinity => {
                if arcs.iter().any(BoundaryArc::is_unbounded) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// The boundary point closest to `z`.
    pub fn nearest_boundary_point(&self, z: Complex64) -> Complex64 {
        self.boundary_arcs()
            .iter()
            .map(|a| a.nearest_point(z))
            .min_by(|p, q| {
                (z - p)
                    .norm()
                    .partial_cmp(&(z - q).norm())
                    .expect("finite distances")
            })
            .expect("catalog shapes have nonempty boundary")
    }

    /// Simplifies Mobius images of disk-like shapes to exact catalog shapes.
    /// Sector-based images stay symbolic.
    pub fn resolve(&self) -> PlanarDomain {
        match self {
            PlanarDomain::MobiusImage { base, map } => {
                let rb = base.resolve();
                match &rb {
                    PlanarDomain::Disk { .. }
                    | PlanarDomain::ExteriorDisk { .. }
                    | PlanarDomain::HalfPlane { .. } => resolve_disklike_image(&rb, map),
                    _ => PlanarDomain::MobiusImage {
                        base: Box::new(rb),
                        map: *map,
                    },
                }
            }
            other => other.clone(),
        }
    }

    /// Axis-aligned bounding box, when the domain is bounded and one is known.
    pub fn bounding_box(&self) -> Option<(Complex64, Complex64)> {
        let resolved = self.resolve();
        match &resolved {
            PlanarDomain::Disk { center, radius } => Some((
                center - Complex64::new(*radius, *radius),
                center + Complex64::new(*radius, *radius),
            )),
            PlanarDomain::AnnularSector {
                vertex,
                outer_radius: Some(outer),
                ..
            } => Some((
                vertex - Complex64::new(*outer, *outer),
                vertex + Complex64::new(*outer, *outer),
            )),
            PlanarDomain::MobiusImage { .. } => {
                let arcs = resolved.boundary_arcs();
                if arcs.iter().any(BoundaryArc::is_unbounded) {
                    return None;
                }
                let far = CPoint::new(3.9e8, 2.7e8);
                if resolved.contains(far) {
                    return None;
                }
                let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
                let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
                for arc in &arcs {
                    let (a, b) = match *arc {
                        BoundaryArc::Segment {
                            origin,
                            dir,
                            t0,
                            t1,
                        } => (origin + t0 * dir, origin + t1 * dir),
                        BoundaryArc::CircleArc { center, radius, .. } => (
                            center - Complex64::new(radius, radius),
                            center + Complex64::new(radius, radius),
                        ),
                    };
                    lo = Complex64::new(lo.re.min(a.re.min(b.re)), lo.im.min(a.im.min(b.im)));
                    hi = Complex64::new(hi.re.max(a.re.max(b.re)), hi.im.max(a.im.max(b.im)));
                }
                Some((lo, hi))
            }
            _ => None,
        }
    }
}

fn resolve_disklike_image(base: &PlanarDomain, map: &MobiusMap) -> PlanarDomain {
    let pole = map.pole();
    // A finite interior sample away from the pole.
    let candidates: Vec<Complex64> = match base {
        PlanarDomain::Disk { center, radius } => vec![
            *center,
            center + Complex64::new(radius / 2.0, 0.0),
            center + Complex64::new(0.0, radius / 2.0),
            center - Complex64::new(radius / 2.0, 0.0),
        ],
        PlanarDomain::ExteriorDisk { center, radius } => vec![
            center + Complex64::new(2.0 * radius, 0.0),
            center + Complex64::new(0.0, 2.0 * radius),
            center + Complex64::new(-3.0 * radius, 0.0),
        ],
        PlanarDomain::HalfPlane {
            boundary_point,
            normal_angle,
        } => {
            let n = Complex64::from_polar(1.0, *normal_angle);
            vec![
                boundary_point + n,
                boundary_point + 2.0 * n,
                boundary_point + 0.5 * n,
            ]
        }
        _ => unreachable!("resolve_disklike_image only sees disk-like bases"),
    };
    let sample = candidates
        .into_iter()
        .find(|s| {
            let off_pole = match pole {
                CPoint::Finite(p) => (s - p).norm() > 1e-9 * (1.0 + p.norm()),
                CPoint::Infinity => true,
            };
            off_pole && base.contains(CPoint::Finite(*s))
        })
        .expect("a disk-like shape has interior samples away from the pole");
    let w_sample = map
        .apply(CPoint::Finite(sample))
        .as_complex()
        .expect("sample avoids the pole");

    let boundary = base.boundary_arcs();
    debug_assert_eq!(boundary.len(), 1);
    let image = map_arc(&boundary[0], map);
    debug_assert_eq!(image.len(), 1);
    match image[0] {
        BoundaryArc::CircleArc { center, radius, .. } => {
            if (w_sample - center).norm() < radius {
                PlanarDomain::Disk { center, radius }
            } else {
                PlanarDomain::ExteriorDisk { center, radius }
            }
        }
        BoundaryArc::Segment { origin, dir, .. } => {
            let perp = Complex64::new(0.0, 1.0) * dir;
            let side = ((w_sample - origin) * perp.conj()).re;
            let normal = if side >= 0.0 { perp } else { -perp };
            PlanarDomain::HalfPlane {
                boundary_point: origin,
                normal_angle: normal.arg(),
            }
        }
    }
}
