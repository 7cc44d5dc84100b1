//! Polycylindrical domains in C^n, generalized inner radii, and the
//! verification functional `J_m(γ)`.
//!
//! A polycylindrical domain is a product `B_1 × … × B_n` of planar catalog
//! shapes. Its generalized inner p-radius at `A = (a_1, …, a_n)` is the
//! geometric mean `[∏_{k=1}^p r(B_k, a_k)]^{1/p}` of per-coordinate planar
//! inner radii; with `p = n` this is the generalized inner radius
//! `R(B, A)`.
//!
//! For a system of `m + 1` mutually non-overlapping polycylindrical domains
//! `B_0, …, B_m` with `0 ∈ B_0` and marked points `A_k ∈ B_k` forming a
//! C^n ray system, the functional under study is
//! `J = R^γ(B_0, 0) · ∏_{k=1}^m R(B_k, A_k)`; it decomposes exactly into
//! the geometric mean of `n` planar products, which is how it is computed
//! here (in log space throughout).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{domains_disjoint, CPoint, Disjointness, PlanarDomain};
use crate::radius::inner_radius_analytic;
use crate::rays::PolyRaySystem;
use crate::wos::{wos_inner_radius, WosParams};

/// Grid resolution used for the sampling fallback of pairwise disjointness
/// checks during configuration validation.
const DISJOINTNESS_SAMPLES: usize = 32;

/// A product `B_1 × … × B_n` of planar domains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDomain {
    pub coords: Vec<PlanarDomain>,
}

impl PolyDomain {
    pub fn new(coords: Vec<PlanarDomain>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDomain(
                "polycylindrical domain needs at least one coordinate".into(),
            ));
        }
        for c in &coords {
            c.validate()?;
        }
        Ok(PolyDomain { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn contains(&self, a: &PolyPoint) -> bool {
        self.coords.len() == a.coords.len()
            && self
                .coords
                .iter()
                .zip(&a.coords)
                .all(|(domain, point)| domain.contains(*point))
    }
}

/// A point of the extended space C̄^n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyPoint {
    pub coords: Vec<CPoint>,
}

impl PolyPoint {
    pub fn new(coords: Vec<CPoint>) -> Self {
        PolyPoint { coords }
    }

    /// The origin of C^n.
    pub fn origin(n: usize) -> Self {
        PolyPoint {
            coords: vec![CPoint::ZERO; n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }
}

/// How per-coordinate planar radii are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiiMethod {
    /// Closed-form catalog radii; fails on shapes without one.
    Analytic,
    /// Walk-on-spheres estimates with propagated standard errors.
    MonteCarlo,
}

/// A log-radius with the standard error of the log (zero for analytic
/// values).
#[derive(Clone, Copy, Debug)]
struct LogRadius {
    log: f64,
    stderr: f64,
}

/// A positive quantity computed in log space together with the propagated
/// standard error of its logarithm; `stderr_log = 0` for analytic inputs.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct JEstimate {
    pub value: f64,
    pub log_value: f64,
    pub stderr_log: f64,
}

impl JEstimate {
    fn from_log(log: f64, stderr: f64) -> Self {
        JEstimate {
            value: log.exp(),
            log_value: log,
            stderr_log: stderr,
        }
    }
}

/// Splitmix-style mixing for derived RNG seeds, so each (point, coordinate)
/// pair walks on its own reproducible stream family.
fn derive_seed(seed: u64, point_index: u64, coordinate: u64) -> u64 {
    let mut x = seed
        ^ point_index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ coordinate.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn coord_log_radius(
    domain: &PlanarDomain,
    a: CPoint,
    method: RadiiMethod,
    wos: &WosParams,
    point_index: usize,
    coordinate: usize,
) -> Result<LogRadius> {
    match method {
        RadiiMethod::Analytic => {
            let r = inner_radius_analytic(domain, a)?;
            Ok(LogRadius {
                log: r.value.ln(),
                stderr: 0.0,
            })
        }
        RadiiMethod::MonteCarlo => {
            let params = WosParams {
                seed: derive_seed(wos.seed, point_index as u64, coordinate as u64),
                ..*wos
            };
            let est = wos_inner_radius(domain, a, &params)?;
            Ok(LogRadius {
                log: est.mean_log,
                stderr: est.stderr_log,
            })
        }
    }
}

/// The generalized inner p-radius `[∏_{k=1}^p r(B_k, a_k)]^{1/p}` over the
/// first `p` coordinates.
pub fn generalized_inner_radius(
    d: &PolyDomain,
    a: &PolyPoint,
    p: usize,
    method: RadiiMethod,
    wos: &WosParams,
) -> Result<JEstimate> {
    if p == 0 || p > d.dimension() {
        return Err(Error::InvalidParams(format!(
            "p must lie in 1..={}, got {p}",
            d.dimension()
        )));
    }
    let indices: Vec<usize> = (0..p).collect();
    generalized_inner_radius_subset(d, a, &indices, method, wos)
}

/// The p-radius over an explicit coordinate subset (the default form takes
/// the first `p` coordinates).
pub fn generalized_inner_radius_subset(
    d: &PolyDomain,
    a: &PolyPoint,
    indices: &[usize],
    method: RadiiMethod,
    wos: &WosParams,
) -> Result<JEstimate> {
    if indices.is_empty() {
        return Err(Error::InvalidParams("empty coordinate subset".into()));
    }
    if a.dimension() != d.dimension() {
        return Err(Error::InvalidParams(format!(
            "point has {} coordinates, domain has {}",
            a.dimension(),
            d.dimension()
        )));
    }
    let mut log_sum = 0.0;
    let mut var_sum = 0.0;
    for &idx in indices {
        if idx >= d.dimension() {
            return Err(Error::InvalidParams(format!(
                "coordinate index {idx} out of range"
            )));
        }
        if !d.coords[idx].contains(a.coords[idx]) {
            return Err(Error::NotInteriorAt {
                point_index: 0,
                coordinate: idx,
            });
        }
        let lr = coord_log_radius(&d.coords[idx], a.coords[idx], method, wos, 0, idx)?;
        log_sum += lr.log;
        var_sum += lr.stderr * lr.stderr;
    }
    let p = indices.len() as f64;
    Ok(JEstimate::from_log(log_sum / p, var_sum.sqrt() / p))
}

/// A complete verification instance: marked points `A_0 = 0, A_1, …, A_m`,
/// mutually non-overlapping polycylindrical domains `B_0, …, B_m` with
/// `A_k ∈ B_k`, and the exponent `γ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyConfiguration {
    pub gamma: f64,
    /// `A_0, …, A_m` (the first must be the origin).
    pub points: Vec<PolyPoint>,
    /// `B_0, …, B_m`, parallel to `points`.
    pub domains: Vec<PolyDomain>,
    pub radii_method: RadiiMethod,
    /// Walk-on-spheres settings used when `radii_method` is Monte Carlo.
    #[serde(default)]
    pub wos: WosParams,
}

impl PolyConfiguration {
    pub fn new(
        gamma: f64,
        points: Vec<PolyPoint>,
        domains: Vec<PolyDomain>,
        radii_method: RadiiMethod,
        wos: WosParams,
    ) -> Result<Self> {
        let c = PolyConfiguration {
            gamma,
            points,
            domains,
            radii_method,
            wos,
        };
        c.validate()?;
        Ok(c)
    }

    /// Number of non-origin marked points `m`.
    pub fn num_rays(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// Ambient dimension `n`.
    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, PolyPoint::dimension)
    }

    /// The C^n ray system formed by `A_1, …, A_m`.
    pub fn ray_system(&self) -> Result<PolyRaySystem> {
        let rows: Vec<Vec<Complex64>> = self.points[1..]
            .iter()
            .map(|a| {
                a.coords
                    .iter()
                    .map(|z| {
                        z.as_complex().ok_or_else(|| {
                            Error::InvalidRaySystem(
                                "marked points must be finite to form a ray system".into(),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyRaySystem::from_rows(&rows)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() != self.domains.len() {
            return Err(Error::InvalidConfiguration(format!(
                "{} points but {} domains",
                self.points.len(),
                self.domains.len()
            )));
        }
        if self.points.len() < 3 {
            return Err(Error::InvalidConfiguration(
                "need the origin plus at least two marked points".into(),
            ));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidConfiguration(format!(
                "gamma must be positive and finite, got {}",
                self.gamma
            )));
        }
        let n = self.dimension();
        if n == 0 {
            return Err(Error::InvalidConfiguration("empty points".into()));
        }
        for (k, (a, b)) in self.points.iter().zip(&self.domains).enumerate() {
            if a.dimension() != n || b.dimension() != n {
                return Err(Error::InvalidConfiguration(format!(
                    "entry {k} does not have the common dimension {n}"
                )));
            }
            for (p, z) in a.coords.iter().enumerate() {
                if !b.coords[p].contains(*z) {
                    return Err(Error::NotInteriorAt {
                        point_index: k,
                        coordinate: p,
                    });
                }
            }
        }
        for z in &self.points[0].coords {
            if *z != CPoint::ZERO {
                return Err(Error::InvalidConfiguration(
                    "the first marked point must be the origin".into(),
                ));
            }
        }
        // Per-coordinate pairwise non-overlap of B_0, …, B_m.
        for p in 0..n {
            for i in 0..self.domains.len() {
                for j in i + 1..self.domains.len() {
                    match domains_disjoint(
                        &self.domains[i].coords[p],
                        &self.domains[j].coords[p],
                        DISJOINTNESS_SAMPLES,
                    ) {
                        Disjointness::Disjoint { .. } => {}
                        Disjointness::Overlapping { .. } => {
                            return Err(Error::InvalidConfiguration(format!(
                                "domains {i} and {j} overlap in coordinate {p}"
                            )));
                        }
                        Disjointness::Inconclusive { .. } => {
                            return Err(Error::DisjointnessUnresolved {
                                i,
                                j,
                                coordinate: p,
                            });
                        }
                    }
                }
            }
        }
        // A_1, …, A_m must form a valid anchored ray system.
        self.ray_system()?;
        Ok(())
    }

    /// The `(m+1) × n` matrix of per-coordinate log radii
    /// `ln r(B_p^{(k)}, a_p^{(k)})`, shared by [`Self::j_functional`] and
    /// [`Self::decompose_j`] so the geometric-mean identity holds exactly.
    fn log_radius_matrix(&self) -> Result<Vec<Vec<LogRadius>>> {
        self.points
            .iter()
            .zip(&self.domains)
            .enumerate()
            .map(|(k, (a, b))| {
                (0..self.dimension())
                    .map(|p| {
                        coord_log_radius(
                            &b.coords[p],
                            a.coords[p],
                            self.radii_method,
                            &self.wos,
                            k,
                            p,
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// The functional `J = R^γ(B_0, 0) · ∏_{k=1}^m R(B_k, A_k)`.
    pub fn j_functional(&self) -> Result<JEstimate> {
        self.validate()?;
        let matrix = self.log_radius_matrix()?;
        Ok(combine_coordinates(&per_coordinate_j(&matrix, self.gamma)))
    }

    /// The per-coordinate planar values
    /// `J_p = r^γ(B_p^{(0)}, 0) · ∏_{k=1}^m r(B_p^{(k)}, a_p^{(k)})`, whose
    /// geometric mean is `j_functional`.
    pub fn decompose_j(&self) -> Result<Vec<JEstimate>> {
        self.validate()?;
        let matrix = self.log_radius_matrix()?;
        Ok(per_coordinate_j(&matrix, self.gamma))
    }
}

fn per_coordinate_j(matrix: &[Vec<LogRadius>], gamma: f64) -> Vec<JEstimate> {
    let n = matrix[0].len();
    (0..n)
        .map(|p| {
            let mut log = gamma * matrix[0][p].log;
            let mut var = gamma * gamma * matrix[0][p].stderr * matrix[0][p].stderr;
            for row in &matrix[1..] {
                log += row[p].log;
                var += row[p].stderr * row[p].stderr;
            }
            JEstimate::from_log(log, var.sqrt())
        })
        .collect()
}

fn combine_coordinates(per_coord: &[JEstimate]) -> JEstimate {
    let n = per_coord.len() as f64;
    let log = per_coord.iter().map(|j| j.log_value).sum::<f64>() / n;
    let var = per_coord
        .iter()
        .map(|j| j.stderr_log * j.stderr_log)
        .sum::<f64>()
        / (n * n);
    JEstimate::from_log(log, var.sqrt())
}
