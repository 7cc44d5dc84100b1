//! Verification of the extremal inequality `J ≤ bound` on concrete
//! configurations, plus the randomized sweep harness.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::bound::{extremal_bound, BoundParams, HypothesisMode};
use crate::extremal::generate::{generate_disk_config, generate_sector_config};
use crate::geom::{CPoint, PlanarDomain};
use crate::poly::{PolyConfiguration, PolyDomain, PolyPoint, RadiiMethod};
use crate::rays::{check_theorem_normalization, RaySystem};
use crate::wos::WosParams;

/// Exact-arithmetic slack tolerance: analytic instances must satisfy
/// `slack ≥ −1e-9`.
const EXACT_SLACK_TOL: f64 = 1e-9;

/// Which hypotheses of the extremal bound a configuration satisfies.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HypothesisFlags {
    /// `m ≥ 5`.
    pub m_large_enough: bool,
    /// `0 < γ ≤ m^(1/3)`.
    pub gamma_in_range: bool,
    /// `L^(γ) = L^(0) = 1` in every coordinate (tolerance 1e-9).
    pub normalization: bool,
}

impl HypothesisFlags {
    pub fn all_ok(&self) -> bool {
        self.m_large_enough && self.gamma_in_range && self.normalization
    }
}

/// The outcome of checking `J ≤ bound` on one configuration.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// Sweep trial index (0 for one-off verifications).
    pub trial: usize,
    pub m: usize,
    pub n: usize,
    pub gamma: f64,
    pub j_value: f64,
    /// Standard error of `ln J` (zero for analytic radii).
    pub j_stderr: f64,
    pub bound: f64,
    /// `ln bound − ln J`; nonnegative when the inequality holds exactly.
    pub slack: f64,
    pub hypotheses: HypothesisFlags,
    /// `slack ≥ −1e-9` for exact radii, `slack ≥ −3·j_stderr` for Monte
    /// Carlo radii.
    pub holds: bool,
}

/// Checks the inequality on a polycylindrical configuration.
///
/// Strict mode rejects configurations outside the proven hypotheses
/// (`m ≥ 5`, `γ ≤ m^(1/3)`, both L-normalizations); lax mode evaluates
/// anyway and records the violated hypotheses in the report flags.
pub fn verify_configuration(
    c: &PolyConfiguration,
    mode: HypothesisMode,
) -> Result<VerificationReport> {
    c.validate()?;
    let m = c.num_rays();
    let n = c.dimension();
    let params = BoundParams::new(m, c.gamma);
    let normalization = check_theorem_normalization(&c.ray_system()?, c.gamma)?.ok;
    let hypotheses = HypothesisFlags {
        m_large_enough: m >= 5,
        gamma_in_range: c.gamma > 0.0 && c.gamma <= (m as f64).cbrt(),
        normalization,
    };
    if mode == HypothesisMode::Strict && !normalization {
        return Err(Error::HypothesisViolation(
            "ray system violates the L-normalizations".into(),
        ));
    }
    let bound = extremal_bound(&params, mode)?;
    let j = c.j_functional()?;
    let slack = bound.value.ln() - j.log_value;
    let holds = if j.stderr_log > 0.0 {
        slack >= -3.0 * j.stderr_log
    } else {
        slack >= -EXACT_SLACK_TOL
    };
    Ok(VerificationReport {
        trial: 0,
        m,
        n,
        gamma: c.gamma,
        j_value: j.value,
        j_stderr: j.stderr_log,
        bound: bound.value,
        slack,
        hypotheses,
        holds,
    })
}

/// The planar (n = 1) case: `m` anchored ray points with their domains
/// `B_1, …, B_m` and the origin's domain `B_0` first in `domains`.
pub fn planar_inequality_check(
    planar_points: &RaySystem,
    planar_domains: &[PlanarDomain],
    gamma: f64,
    mode: HypothesisMode,
) -> Result<VerificationReport> {
    if planar_domains.len() != planar_points.len() + 1 {
        return Err(Error::InvalidConfiguration(format!(
            "need {} domains (origin's plus one per point), got {}",
            planar_points.len() + 1,
            planar_domains.len()
        )));
    }
    let mut points = vec![PolyPoint::origin(1)];
    points.extend(
        planar_points
            .points()
            .iter()
            .map(|&a| PolyPoint::new(vec![CPoint::Finite(a)])),
    );
    let domains = planar_domains
        .iter()
        .map(|d| PolyDomain::new(vec![d.clone()]))
        .collect::<Result<Vec<_>>>()?;
    let config = PolyConfiguration::new(
        gamma,
        points,
        domains,
        RadiiMethod::Analytic,
        WosParams::default(),
    )?;
    verify_configuration(&config, mode)
}

/// The aggregate outcome of a randomized sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub reports: Vec<VerificationReport>,
    /// Smallest `slack` over all reports.
    pub min_slack: f64,
    /// Trials whose generated instance failed validation and were skipped.
    pub skipped: usize,
}

/// Walk-on-spheres settings used for the Monte Carlo trials of a sweep:
/// light enough to keep sweeps fast, with the acceptance criterion scaled
/// by the propagated standard error.
fn sweep_wos_params(seed: u64) -> WosParams {
    WosParams {
        epsilon_shell: 1e-3,
        max_steps: 10_000,
        walks: 1_500,
        seed,
    }
}

/// Verifies the inequality on `trials` randomized admissible configurations
/// with the given `(m, n, γ)`.
///
/// Most trials use disk-based instances with exact radii; every tenth trial
/// exercises the Monte Carlo path on unbounded annular-sector instances.
/// Each trial derives its randomness from `(seed, trial)`, so results are
/// bit-identical across runs and thread schedules.
pub fn randomized_verification_sweep(
    m: usize,
    n: usize,
    gamma: f64,
    trials: usize,
    seed: u64,
) -> Result<SweepResult> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be positive".into()));
    }
    BoundParams::new(m, gamma)
        .in_hypothesis()
        .then_some(())
        .ok_or_else(|| {
            Error::HypothesisViolation(format!(
                "sweep parameters must satisfy the proven range: m = {m}, gamma = {gamma}"
            ))
        })?;

    let outcomes: Vec<Option<VerificationReport>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let rho: f64 = rng.random_range(0.15..0.45);
            let config = if trial % 10 == 9 {
                let radial_scale = rng.random_range(1.0..(0.95 / rho).min(2.0));
                let mut c = generate_sector_config(m, n, gamma, rho, radial_scale).ok()?;
                c.radii_method = RadiiMethod::MonteCarlo;
                c.wos = sweep_wos_params(seed.wrapping_add(trial as u64));
                c
            } else {
                let shrink = rng.random_range(0.3..0.95);
                let mut c = generate_disk_config(m, n, gamma, rho, shrink).ok()?;
                // Random per-domain heterogeneity: shrink each disk a bit
                // more, independently (shrinking preserves admissibility).
                for domain in c.domains.iter_mut().skip(1) {
                    for coord in domain.coords.iter_mut() {
                        if let PlanarDomain::Disk { center, radius } = coord {
                            *coord = PlanarDomain::Disk {
                                center: *center,
                                radius: *radius * rng.random_range(0.6..1.0),
                            };
                        }
                    }
                }
                c
            };
            let mut report = verify_configuration(&config, HypothesisMode::Strict).ok()?;
            report.trial = trial;
            Some(report)
        })
        .collect();

    let skipped = outcomes.iter().filter(|o| o.is_none()).count();
    let reports: Vec<VerificationReport> = outcomes.into_iter().flatten().collect();
    if reports.is_empty() {
        return Err(Error::InvalidConfiguration(
            "every sweep trial failed to generate an admissible instance".into(),
        ));
    }
    let min_slack = reports
        .iter()
        .map(|r| r.slack)
        .fold(f64::INFINITY, f64::min);
    Ok(SweepResult {
        reports,
        min_slack,
        skipped,
    })
}
