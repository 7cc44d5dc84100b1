//! Boundary arcs of catalog shapes.
//!
//! Every shape in the catalog has a boundary made of finitely many pieces of
//! generalized circles (lines or circles). Mobius maps send such pieces to
//! such pieces, so representing boundaries this way gives exact distance
//! queries for Mobius images as well.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::geom::mobius::MobiusMap;
use crate::geom::point::normalize_arg;

/// One piece of a shape boundary: a (possibly unbounded) line segment or a
/// circular arc.
#[derive(Clone, Copy, Debug)]
pub enum BoundaryArc {
    /// `origin + t·dir` for `t ∈ [t0, t1]`; `dir` is a unit vector and the
    /// parameter bounds may be infinite.
    Segment {
        origin: Complex64,
        dir: Complex64,
        t0: f64,
        t1: f64,
    },
    /// Points `center + radius·e^{iφ}` for `φ` from `start` sweeping
    /// counterclockwise by `sweep ∈ (0, 2π]`.
    CircleArc {
        center: Complex64,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl BoundaryArc {
    pub fn ray(origin: Complex64, angle: f64) -> Self {
        BoundaryArc::Segment {
            origin,
            dir: Complex64::from_polar(1.0, angle),
            t0: 0.0,
            t1: f64::INFINITY,
        }
    }

    pub fn line(origin: Complex64, angle: f64) -> Self {
        BoundaryArc::Segment {
            origin,
            dir: Complex64::from_polar(1.0, angle),
            t0: f64::NEG_INFINITY,
            t1: f64::INFINITY,
        }
    }

    pub fn full_circle(center: Complex64, radius: f64) -> Self {
        BoundaryArc::CircleArc {
            center,
            radius,
            start: 0.0,
            sweep: TAU,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        match self {
            BoundaryArc::Segment { t0, t1, .. } => t0.is_infinite() || t1.is_infinite(),
            BoundaryArc::CircleArc { .. } => false,
        }
    }

    /// The point of the arc closest to `z`.
    pub fn nearest_point(&self, z: Complex64) -> Complex64 {
        match *self {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => {
                let t = ((z - origin) * dir.conj()).re.clamp(t0, t1);
                origin + t * dir
            }
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => {
                let v = z - center;
                if v.norm() == 0.0 {
                    return center + Complex64::from_polar(radius, start + sweep / 2.0);
                }
                let rel = normalize_arg(v.arg() - start);
                if rel <= sweep {
                    center + Complex64::from_polar(radius, start + rel)
                } else {
                    let p0 = center + Complex64::from_polar(radius, start);
                    let p1 = center + Complex64::from_polar(radius, start + sweep);
                    if (z - p0).norm() <= (z - p1).norm() {
                        p0
                    } else {
                        p1
                    }
                }
            }
        }
    }

    pub fn dist(&self, z: Complex64) -> f64 {
        (z - self.nearest_point(z)).norm()
    }

    /// Largest distance from `z` to a point of the arc; `None` when the arc is
    /// unbounded.
    pub fn max_dist(&self, z: Complex64) -> Option<f64> {
        match *self {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => {
                if t0.is_infinite() || t1.is_infinite() {
                    return None;
                }
                let d0 = (z - (origin + t0 * dir)).norm();
                let d1 = (z - (origin + t1 * dir)).norm();
                Some(d0.max(d1))
            }
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => {
                let v = center - z;
                let mut best = {
                    let p0 = center + Complex64::from_polar(radius, start);
                    let p1 = center + Complex64::from_polar(radius, start + sweep);
                    (z - p0).norm().max((z - p1).norm())
                };
                // Angle of the point diametrically away from z.
                if v.norm() > 0.0 {
                    let far = normalize_arg(v.arg() - start);
                    if far <= sweep {
                        best = best.max(v.norm() + radius);
                    }
                } else {
                    best = best.max(radius);
                }
                Some(best)
            }
        }
    }

    fn endpoints(&self) -> (Option<Complex64>, Option<Complex64>) {
        match *self {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => {
                let e = |t: f64| {
                    if t.is_finite() {
                        Some(origin + t * dir)
                    } else {
                        None
                    }
                };
                (e(t0), e(t1))
            }
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => (
                Some(center + Complex64::from_polar(radius, start)),
                Some(center + Complex64::from_polar(radius, start + sweep)),
            ),
        }
    }

    /// A finite point strictly inside the arc.
    fn interior_point(&self) -> Complex64 {
        match *self {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => {
                let t = match (t0.is_finite(), t1.is_finite()) {
                    (true, true) => 0.5 * (t0 + t1),
                    (true, false) => t0 + 1.0,
                    (false, true) => t1 - 1.0,
                    (false, false) => 0.0,
                };
                origin + t * dir
            }
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => center + Complex64::from_polar(radius, start + sweep / 2.0),
        }
    }
}

const FULL_SWEEP_TOL: f64 = 1e-12;

fn is_full_circle(arc: &BoundaryArc) -> bool {
    matches!(arc, BoundaryArc::CircleArc { sweep, .. } if *sweep >= TAU - FULL_SWEEP_TOL)
}

fn is_full_line(arc: &BoundaryArc) -> bool {
    matches!(arc, BoundaryArc::Segment { t0, t1, .. } if t0.is_infinite() && t1.is_infinite())
}

/// Center of the circle through three non-collinear points.
fn circumcenter(p1: Complex64, p2: Complex64, p3: Complex64) -> Option<Complex64> {
    let b = p2 - p1;
    let c = p3 - p1;
    let d = 2.0 * (b.re * c.im - b.im * c.re);
    let scale = b.norm() * c.norm();
    if d.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    let ux = (c.im * b.norm_sqr() - b.im * c.norm_sqr()) / d;
    let uy = (b.re * c.norm_sqr() - c.re * b.norm_sqr()) / d;
    Some(p1 + Complex64::new(ux, uy))
}

fn apply_finite(map: &MobiusMap, z: Complex64) -> Option<Complex64> {
    let den = map.c * z + map.d;
    if den.norm() == 0.0 {
        None
    } else {
        Some((map.a * z + map.b) / den)
    }
}

/// Arc from `w0` counterclockwise or clockwise to `w1` on the circle around
/// `center`, chosen so that it passes through `wm`.
fn circle_arc_through(
    center: Complex64,
    w0: Complex64,
    w1: Complex64,
    wm: Complex64,
) -> BoundaryArc {
    let radius = ((w0 - center).norm() + (w1 - center).norm() + (wm - center).norm()) / 3.0;
    let phi0 = (w0 - center).arg();
    let phi1 = (w1 - center).arg();
    let phim = (wm - center).arg();
    let d1 = normalize_arg(phi1 - phi0);
    let dm = normalize_arg(phim - phi0);
    if dm <= d1 {
        BoundaryArc::CircleArc {
            center,
            radius,
            start: phi0,
            sweep: if d1 > 0.0 { d1 } else { TAU },
        }
    } else {
        BoundaryArc::CircleArc {
            center,
            radius,
            start: phi1,
            sweep: TAU - d1,
        }
    }
}

/// Maps a boundary arc through a Mobius transformation, returning the image
/// as one or two boundary arcs (two when the pole splits the source arc).
pub fn map_arc(arc: &BoundaryArc, map: &MobiusMap) -> Vec<BoundaryArc> {
    // Affine maps need no pole handling and preserve arc kinds.
    if map.c.norm() == 0.0 {
        let k = map.a / map.d;
        let shift = map.b / map.d;
        let scale = k.norm();
        return vec![match *arc {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => BoundaryArc::Segment {
                origin: k * origin + shift,
                dir: k * dir / scale,
                t0: t0 * scale,
                t1: t1 * scale,
            },
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => BoundaryArc::CircleArc {
                center: k * center + shift,
                radius: radius * scale,
                start: start + k.arg(),
                sweep,
            },
        }];
    }

    let pole = -map.d / map.c;
    let w_inf = map.a / map.c; // image of infinity
    let arc_scale = match *arc {
        BoundaryArc::Segment { origin, .. } => origin.norm().max(1.0),
        BoundaryArc::CircleArc { center, radius, .. } => (center.norm() + radius).max(1.0),
    };
    let pole_tol = 1e-12 * arc_scale.max(pole.norm());

    // Split at the pole when it lies strictly inside the arc.
    if arc.dist(pole) <= pole_tol {
        match *arc {
            BoundaryArc::Segment {
                origin,
                dir,
                t0,
                t1,
            } => {
                let tp = ((pole - origin) * dir.conj()).re;
                let gap = 1e-12 * arc_scale;
                // Split only when the pole is strictly inside; a pole at an
                // endpoint is handled by the general path below.
                if tp - t0 > gap && t1 - tp > gap {
                    let mut out = map_arc(
                        &BoundaryArc::Segment {
                            origin,
                            dir,
                            t0,
                            t1: tp,
                        },
                        map,
                    );
                    out.extend(map_arc(
                        &BoundaryArc::Segment {
                            origin,
                            dir,
                            t0: tp,
                            t1,
                        },
                        map,
                    ));
                    return out;
                }
            }
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                sweep,
            } => {
                if is_full_circle(arc) {
                    // Circle through the pole maps to a full line.
                    let phi_p = (pole - center).arg();
                    let s1 = center + Complex64::from_polar(radius, phi_p + 1.0);
                    let s2 = center + Complex64::from_polar(radius, phi_p + 2.0);
                    let (w1, w2) = (
                        apply_finite(map, s1).expect("off-pole sample"),
                        apply_finite(map, s2).expect("off-pole sample"),
                    );
                    return vec![BoundaryArc::line(w1, (w2 - w1).arg())];
                }
                let rel = normalize_arg((pole - center).arg() - start);
                let gap = 1e-12;
                if rel > gap && rel < sweep - gap {
                    let mut out = map_arc(
                        &BoundaryArc::CircleArc {
                            center,
                            radius,
                            start,
                            sweep: rel,
                        },
                        map,
                    );
                    out.extend(map_arc(
                        &BoundaryArc::CircleArc {
                            center,
                            radius,
                            start: start + rel,
                            sweep: sweep - rel,
                        },
                        map,
                    ));
                    return out;
                }
                // Pole at an endpoint: general path handles it.
            }
        }
    }

    // Closed curves without a pole on them map to full circles.
    if is_full_circle(arc) || is_full_line(arc) {
        let samples: [Complex64; 3] = match *arc {
            BoundaryArc::CircleArc {
                center,
                radius,
                start,
                ..
            } => [
                center + Complex64::from_polar(radius, start),
                center + Complex64::from_polar(radius, start + TAU / 3.0),
                center + Complex64::from_polar(radius, start + 2.0 * TAU / 3.0),
            ],
            BoundaryArc::Segment { origin, dir, .. } => {
                [origin - arc_scale * dir, origin, origin + arc_scale * dir]
            }
        };
        let mut ws = [Complex64::default(); 3];
        for (w, s) in ws.iter_mut().zip(samples) {
            *w = apply_finite(map, s).expect("pole not on curve");
        }
        // A full line also passes through infinity, which maps to w_inf.
        let (p1, p2, p3) = if is_full_line(arc) {
            (ws[0], ws[1], w_inf)
        } else {
            (ws[0], ws[1], ws[2])
        };
        let center = circumcenter(p1, p2, p3).expect("image of closed curve is a circle");
        return vec![BoundaryArc::full_circle(center, (p1 - center).norm())];
    }

    // Open arc: endpoints (pole endpoint or infinite parameter) may map to
    // infinity or to w_inf.
    let (e0, e1) = arc.endpoints();
    let img = |e: Option<Complex64>| -> Option<Complex64> {
        match e {
            Some(z) => {
                if (z - pole).norm() <= pole_tol {
                    None
                } else {
                    apply_finite(map, z)
                }
            }
            None => Some(w_inf),
        }
    };
    let w0 = img(e0);
    let w1 = img(e1);
    let zm = arc.interior_point();
    let wm = apply_finite(map, zm).expect("interior point is not the pole");

    match (w0, w1) {
        (Some(w0), Some(w1)) => {
            let chord = w1 - w0;
            let cross = chord.re * (wm - w0).im - chord.im * (wm - w0).re;
            if cross.abs() <= 1e-9 * chord.norm() * (wm - w0).norm() || chord.norm() == 0.0 {
                // Collinear image: a straight segment.
                let dir = if chord.norm() > 0.0 {
                    chord / chord.norm()
                } else {
                    (wm - w0) / (wm - w0).norm()
                };
                BoundaryArc::Segment {
                    origin: w0,
                    dir,
                    t0: 0.0,
                    t1: chord.norm(),
                }
                .into_vec()
            } else {
                match circumcenter(w0, w1, wm) {
                    Some(center) => circle_arc_through(center, w0, w1, wm).into_vec(),
                    None => BoundaryArc::Segment {
                        origin: w0,
                        dir: chord / chord.norm(),
                        t0: 0.0,
                        t1: chord.norm(),
                    }
                    .into_vec(),
                }
            }
        }
        // One endpoint at infinity: the image is a straight ray.
        (Some(wf), None) | (None, Some(wf)) => {
            let dir = (wm - wf) / (wm - wf).norm();
            BoundaryArc::Segment {
                origin: wf,
                dir,
                t0: 0.0,
                t1: f64::INFINITY,
            }
            .into_vec()
        }
        (None, None) => {
            // Both endpoints at the pole: the image is a full line through wm.
            let w2 = apply_finite(map, 0.5 * (zm + arc.nearest_point(pole)))
                .unwrap_or(wm + Complex64::new(1.0, 0.0));
            BoundaryArc::line(wm, (w2 - wm).arg()).into_vec()
        }
    }
}

trait IntoVec {
    fn into_vec(self) -> Vec<BoundaryArc>;
}

impl IntoVec for BoundaryArc {
    fn into_vec(self) -> Vec<BoundaryArc> {
        vec![self]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn segment_distance() {
        let seg = BoundaryArc::Segment {
            origin: c(0.0, 0.0),
            dir: c(1.0, 0.0),
            t0: 0.0,
            t1: 2.0,
        };
        assert!((seg.dist(c(1.0, 3.0)) - 3.0).abs() < 1e-15);
        assert!((seg.dist(c(-1.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((seg.dist(c(5.0, 4.0)) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn circle_arc_distance() {
        let arc = BoundaryArc::CircleArc {
            center: c(0.0, 0.0),
            radius: 2.0,
            start: 0.0,
            sweep: std::f64::consts::PI,
        };
        assert!((arc.dist(c(0.0, 3.0)) - 1.0).abs() < 1e-15);
        // Below the diameter: nearest are the endpoints (±2, 0).
        assert!((arc.dist(c(0.0, -2.0)) - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inversion_maps_unit_circle_to_itself() {
        let circle = BoundaryArc::full_circle(c(0.0, 0.0), 1.0);
        let imgs = map_arc(&circle, &MobiusMap::inversion());
        assert_eq!(imgs.len(), 1);
        match imgs[0] {
            BoundaryArc::CircleArc {
                center,
                radius,
                sweep,
                ..
            } => {
                assert!(center.norm() < 1e-12);
                assert!((radius - 1.0).abs() < 1e-12);
                assert!((sweep - TAU).abs() < 1e-12);
            }
            _ => panic!("expected a circle"),
        }
    }

    #[test]
    fn circle_through_pole_maps_to_line() {
        // |z - 1| = 1 passes through 0, the pole of 1/z; image is Re w = 1/2.
        let circle = BoundaryArc::full_circle(c(1.0, 0.0), 1.0);
        let imgs = map_arc(&circle, &MobiusMap::inversion());
        assert_eq!(imgs.len(), 1);
        for t in [-3.0, 0.0, 5.0] {
            let p = match imgs[0] {
                BoundaryArc::Segment { origin, dir, .. } => origin + t * dir,
                _ => panic!("expected a line"),
            };
            assert!((p.re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn ray_through_pole_splits() {
        // The real axis ray [−1, ∞) contains the pole of 1/z at 0.
        let ray = BoundaryArc::Segment {
            origin: c(-1.0, 0.0),
            dir: c(1.0, 0.0),
            t0: 0.0,
            t1: f64::INFINITY,
        };
        let imgs = map_arc(&ray, &MobiusMap::inversion());
        assert_eq!(imgs.len(), 2);
        // Images: 1/[−1, 0) = (−∞, −1] and 1/(0, ∞) = (0, ∞); both on the real axis.
        for img in &imgs {
            let p = img.nearest_point(c(0.3, 0.7));
            assert!(p.im.abs() < 1e-12);
        }
        let d: f64 = imgs
            .iter()
            .map(|a| a.dist(c(-2.0, 0.0)))
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-12, "-2 is on the image of [-1,0)");
        let d: f64 = imgs
            .iter()
            .map(|a| a.dist(c(0.5, 0.0)))
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-12, "0.5 is on the image of (0,inf)");
        let d: f64 = imgs
            .iter()
            .map(|a| a.dist(c(-0.5, 0.0)))
            .fold(f64::INFINITY, f64::min);
        assert!(d > 0.4, "-0.5 is not on the image");
    }

    #[test]
    fn mapped_arc_points_stay_on_image() {
        // Map a quarter arc of the unit circle by a generic Mobius map and
        // check pointwise that parameter samples land on the image arcs.
        let arc = BoundaryArc::CircleArc {
            center: c(0.5, -0.25),
            radius: 1.25,
            start: 0.3,
            sweep: 1.4,
        };
        let map = MobiusMap::new(c(1.0, 0.5), c(0.0, -1.0), c(0.5, 0.0), c(1.0, 1.0)).unwrap();
        let imgs = map_arc(&arc, &map);
        for i in 0..=40 {
            let phi = 0.3 + 1.4 * (i as f64) / 40.0;
            let z = c(0.5, -0.25) + Complex64::from_polar(1.25, phi);
            let w = apply_finite(&map, z).unwrap();
            let d: f64 = imgs.iter().map(|a| a.dist(w)).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-9, "sample at phi={phi} off the image by {d}");
        }
    }
}
