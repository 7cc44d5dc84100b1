//! End-to-end acceptance suite. Each test checks one advertised guarantee
//! and prints a single PASS line; a failed assertion names the criterion.
//!
//! The extended-precision reference constants were produced independently
//! with mpmath at 60 significant digits and are frozen here.

use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;
use polyrad::{
    alpha_vector, extremal_bound, generate_disk_config, inner_radius_analytic, l_gamma,
    normalize_l0, randomized_verification_sweep, roots_of_unity, wos_inner_radius, BoundParams,
    CPoint, HypothesisMode, MobiusMap, PlanarDomain, RaySystem, WosParams, DEFAULT_SEED,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pt(re: f64, im: f64) -> CPoint {
    CPoint::Finite(c(re, im))
}

/// Criterion 1: the closed-form bound matches a frozen 60-digit evaluation
/// to relative error <= 1e-14 on the (m, gamma) grid, in under a second.
#[test]
fn criterion_1_bound_regression_grid() {
    // (m, gamma index, reference). Gamma indices 0..3 mean
    // {0.1, 0.5, 1.0, cbrt(m)}. The constants are written with guard digits
    // beyond double precision on purpose: they pin the 60-digit references.
    #[rustfmt::skip]
    #[allow(clippy::excessive_precision)]
    let reference: [(usize, [f64; 4]); 8] = [
        (5,  [0.28410603617527430545, 0.1886322465783766331,    0.12481908700052498522,   0.075697461078546822289]),
        (6,  [0.077476566495322332776, 0.053747317399821103796, 0.036948921867756377371,  0.021854819650549021821]),
        (7,  [0.01779478045123129279,  0.012779011823787296884, 0.0090650736125182818855, 0.0052854948104021236636]),
        (8,  [0.0035312129295759296015, 0.0026079144700452660595, 0.0018990063734283646639, 0.0010985902452268438304]),
        (9,  [0.00061695700931945794205, 0.00046633361245388238047, 0.00034716322134517244761, 0.00020009657829004430405]),
        (10, [0.000096292486797625950119, 0.000074220752722778321904, 0.000056310592309165985682, 0.000032424781416083981814]),
        (11, [0.000013581397737514232412, 0.000010644937579663793562, 8.2099307197238099441e-6,  4.7315475979618165496e-6]),
        (12, [1.7473724310971625552e-6,  1.3895678530827329272e-6,  1.0872299166736070463e-6,  6.2791979424206740425e-7]),
    ];
    let start = Instant::now();
    for (m, expected) in reference {
        let gammas = [0.1, 0.5, 1.0, (m as f64).cbrt()];
        for (gamma, want) in gammas.into_iter().zip(expected) {
            let got = extremal_bound(&BoundParams::new(m, gamma), HypothesisMode::Strict)
                .unwrap()
                .value;
            let rel = ((got - want) / want).abs();
            assert!(
                rel <= 1e-14,
                "criterion 1: bound(m={m}, gamma={gamma}) = {got}, reference {want}, \
                 relative error {rel:e}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "criterion 1: grid took {elapsed:?}, budget 1 s"
    );
    println!("criterion 1 PASS: 32-point bound grid within 1e-14 in {elapsed:?}");
}

/// Criterion 2: in lax mode the bound at m = 5 tends to (4/5)^5 = 0.32768
/// as gamma vanishes.
#[test]
fn criterion_2_small_gamma_limit() {
    let v = extremal_bound(&BoundParams::new(5, 1e-8), HypothesisMode::Lax)
        .unwrap()
        .value;
    let limit = 0.32768;
    let rel = ((v - limit) / limit).abs();
    assert!(
        rel <= 1e-5,
        "criterion 2: bound(5, 1e-8) = {v}, limit {limit}, relative error {rel:e}"
    );
    println!("criterion 2 PASS: lax bound(5, 1e-8) = {v} within 1e-5 of 0.32768");
}

/// The analytic fixtures shared by criteria 3: a catalog-spanning set of
/// (domain, evaluation point) pairs with closed-form radii.
fn analytic_fixtures() -> Vec<(PlanarDomain, CPoint)> {
    let unit_disk = PlanarDomain::disk(c(0.0, 0.0), 1.0).unwrap();
    let mobius = MobiusMap::new(c(1.0, 0.5), c(0.2, 0.0), c(0.1, 0.0), c(1.0, 0.0)).unwrap();
    vec![
        (unit_disk.clone(), pt(0.0, 0.0)),
        (unit_disk.clone(), pt(0.4, 0.1)),
        (
            PlanarDomain::disk(c(1.0, -2.0), 3.0).unwrap(),
            pt(0.5, -1.0),
        ),
        (
            PlanarDomain::exterior_disk(c(0.0, 0.0), 1.0).unwrap(),
            CPoint::Infinity,
        ),
        (
            PlanarDomain::exterior_disk(c(0.0, 0.0), 1.0).unwrap(),
            pt(2.5, 0.0),
        ),
        (
            PlanarDomain::half_plane(c(0.0, 0.0), 0.0).unwrap(),
            pt(0.7, 0.2),
        ),
        (
            PlanarDomain::half_plane(c(1.0, 1.0), std::f64::consts::FRAC_PI_4).unwrap(),
            pt(2.0, 2.0),
        ),
        (
            PlanarDomain::sector(c(0.0, 0.0), 0.0, std::f64::consts::FRAC_PI_2).unwrap(),
            pt(1.0, 0.3),
        ),
        (
            PlanarDomain::sector(c(0.0, 0.0), 0.0, 1.5 * std::f64::consts::PI).unwrap(),
            pt(1.0, 0.0),
        ),
        (
            PlanarDomain::sector(c(1.0, 0.0), 1.0, 2.0).unwrap(),
            CPoint::Finite(c(1.0, 0.0) + Complex64::from_polar(1.2, 1.1)),
        ),
        (
            PlanarDomain::mobius_image(unit_disk, mobius).unwrap(),
            pt(0.3, 0.1),
        ),
        (
            PlanarDomain::disk(c(-3.0, 4.0), 0.25).unwrap(),
            pt(-3.1, 4.05),
        ),
    ]
}

/// Criterion 3: for twelve analytic-catalog fixtures the Monte Carlo
/// estimate with 1e5 walks and a 1e-4 shell contains the analytic value in
/// its 99% confidence interval, all within 60 s.
#[test]
fn criterion_3_wos_matches_analytic_catalog() {
    let params = WosParams {
        epsilon_shell: 1e-4,
        max_steps: 100_000,
        walks: 100_000,
        seed: DEFAULT_SEED,
    };
    let start = Instant::now();
    let fixtures = analytic_fixtures();
    assert!(fixtures.len() >= 10);
    for (i, (domain, point)) in fixtures.iter().enumerate() {
        let exact = inner_radius_analytic(domain, *point).unwrap().value;
        let est = wos_inner_radius(domain, *point, &params).unwrap();
        // 99% two-sided normal interval for the mean of ln r.
        let half_width = 2.576 * est.stderr_log;
        let gap = (est.mean_log - exact.ln()).abs();
        assert!(
            gap <= half_width.max(1e-12),
            "criterion 3: fixture {i}: |ln r̂ − ln r| = {gap:e} exceeds the 99% \
             half-width {half_width:e} (analytic {exact}, estimate {})",
            est.radius
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "criterion 3: catalog took {elapsed:?}, budget 60 s"
    );
    println!(
        "criterion 3 PASS: {} fixtures inside 99% CI in {elapsed:?}",
        fixtures.len()
    );
}

/// Criterion 4: the shell-truncation bias at the unit disk's center is at
/// most five shell widths.
#[test]
fn criterion_4_wos_bias_at_disk_center() {
    let disk = PlanarDomain::disk(c(0.0, 0.0), 1.0).unwrap();
    for eps in [1e-2, 1e-3, 1e-4] {
        let params = WosParams {
            epsilon_shell: eps,
            max_steps: 50_000,
            walks: 20_000,
            seed: DEFAULT_SEED,
        };
        let est = wos_inner_radius(&disk, pt(0.0, 0.0), &params).unwrap();
        let bias = (est.radius - 1.0).abs();
        assert!(
            bias <= 5.0 * eps,
            "criterion 4: shell {eps:e} gives radius {}, bias {bias:e} > {:e}",
            est.radius,
            5.0 * eps
        );
    }
    println!("criterion 4 PASS: centered-disk bias within 5 shell widths for 1e-2..1e-4");
}

/// Criterion 5: randomized sweeps over the full (m, gamma, n) grid hold
/// with the documented slack tolerances, in under five minutes.
#[test]
fn criterion_5_inequality_sweep_grid() {
    let start = Instant::now();
    let mut total = 0usize;
    for m in [5usize, 6, 8] {
        for gamma in [0.5, 1.0, (m as f64).cbrt()] {
            for n in [1usize, 2, 3] {
                let sweep = randomized_verification_sweep(m, n, gamma, 100, DEFAULT_SEED).unwrap();
                assert_eq!(
                    sweep.skipped, 0,
                    "criterion 5: m={m}, n={n}, gamma={gamma}: generator skipped trials"
                );
                for r in &sweep.reports {
                    assert!(
                        r.holds,
                        "criterion 5: m={m}, n={n}, gamma={gamma}, trial {}: slack {} \
                         (stderr {})",
                        r.trial, r.slack, r.j_stderr
                    );
                    let tol = if r.j_stderr > 0.0 {
                        -3.0 * r.j_stderr
                    } else {
                        -1e-9
                    };
                    assert!(r.slack >= tol);
                }
                total += sweep.reports.len();
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "criterion 5: sweep grid took {elapsed:?}, budget 5 min"
    );
    println!("criterion 5 PASS: {total} sweep trials all hold in {elapsed:?}");
}

/// Criterion 6: the product functional equals the geometric mean of its
/// per-coordinate factors to 1e-12 in log space, on random heterogeneous
/// configurations.
#[test]
fn criterion_6_decomposition_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDEC0);
    for trial in 0..50 {
        let m = rng.random_range(3..9usize);
        let n = rng.random_range(1..4usize);
        let rho: f64 = rng.random_range(0.15..0.4);
        let shrink: f64 = rng.random_range(0.4..1.0);
        let mut config = generate_disk_config(m, n, 1.0, rho, shrink).unwrap();
        // Heterogeneous radii: every satellite disk shrinks independently.
        for domain in config.domains.iter_mut().skip(1) {
            for coord in domain.coords.iter_mut() {
                if let PlanarDomain::Disk { center, radius } = coord {
                    *coord =
                        PlanarDomain::disk(*center, *radius * rng.random_range(0.5..1.0)).unwrap();
                }
            }
        }
        let whole = config.j_functional().unwrap();
        let parts = config.decompose_j().unwrap();
        let mean_log = parts.iter().map(|j| j.log_value).sum::<f64>() / parts.len() as f64;
        let gap = (whole.log_value - mean_log).abs();
        assert!(
            gap <= 1e-12,
            "criterion 6: trial {trial} (m={m}, n={n}): |log J − mean log J_p| = {gap:e}"
        );
    }
    println!("criterion 6 PASS: 50 heterogeneous decompositions exact to 1e-12");
}

/// Criterion 7: roots of unity are normalized fixed points of the L
/// functional; angular weights always sum to 2; renormalization is
/// idempotent and exact.
#[test]
fn criterion_7_normalization_properties() {
    for m in 2..=12 {
        let s = roots_of_unity(m).unwrap();
        for gamma in [0.0, 0.5, 1.0, 2.0] {
            let v = l_gamma(&s, gamma).unwrap();
            assert!(
                (v - 1.0).abs() <= 1e-12,
                "criterion 7: L^({gamma}) of the {m}-th roots of unity is {v}"
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x707);
    for trial in 0..1000 {
        let s = random_ray_system(&mut rng);
        let sum: f64 = alpha_vector(&s).iter().sum();
        assert!(
            (sum - 2.0).abs() <= 1e-12,
            "criterion 7: trial {trial}: alpha sums to {sum}"
        );
        let norm = normalize_l0(&s).unwrap();
        let l0 = l_gamma(&norm, 0.0).unwrap();
        assert!(
            (l0 - 1.0).abs() <= 1e-12,
            "criterion 7: trial {trial}: L^(0) after normalization is {l0}"
        );
        let again = normalize_l0(&norm).unwrap();
        for (a, b) in norm.points().iter().zip(again.points()) {
            assert!(
                (a - b).norm() <= 1e-12 * (1.0 + a.norm()),
                "criterion 7: trial {trial}: normalization not idempotent"
            );
        }
    }
    println!("criterion 7 PASS: fixed points, alpha sums, and idempotent normalization");
}

/// Criterion 8: Monte Carlo estimates and sweeps are bit-identical across
/// repeated runs and across thread-pool sizes.
#[test]
fn criterion_8_bitwise_determinism() {
    let sector = PlanarDomain::sector(c(0.0, 0.0), 0.3, 2.0).unwrap();
    let params = WosParams {
        epsilon_shell: 1e-3,
        max_steps: 50_000,
        walks: 30_000,
        seed: 42,
    };
    let serial_pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let wide_pool = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap();
    let a = wos_inner_radius(&sector, pt(1.0, 0.4), &params).unwrap();
    let b = serial_pool
        .install(|| wos_inner_radius(&sector, pt(1.0, 0.4), &params))
        .unwrap();
    let c_ = wide_pool
        .install(|| wos_inner_radius(&sector, pt(1.0, 0.4), &params))
        .unwrap();
    for other in [&b, &c_] {
        assert_eq!(
            a.mean_log.to_bits(),
            other.mean_log.to_bits(),
            "criterion 8: walk estimate depends on the thread schedule"
        );
        assert_eq!(a.stderr_log.to_bits(), other.stderr_log.to_bits());
    }

    let s1 = randomized_verification_sweep(5, 2, 1.0, 30, 7).unwrap();
    let s2 = serial_pool
        .install(|| randomized_verification_sweep(5, 2, 1.0, 30, 7))
        .unwrap();
    assert_eq!(s1.reports.len(), s2.reports.len());
    for (x, y) in s1.reports.iter().zip(&s2.reports) {
        assert_eq!(
            x.j_value.to_bits(),
            y.j_value.to_bits(),
            "criterion 8: sweep trial {} depends on the thread schedule",
            x.trial
        );
        assert_eq!(x.slack.to_bits(), y.slack.to_bits());
    }
    println!("criterion 8 PASS: estimates bit-identical across runs and pool sizes");
}

/// Random admissible planar ray system with angular gaps >= 0.05 and moduli
/// in [0.5, 2], keeping ln L well inside the double range.
fn random_ray_system(rng: &mut impl RngExt) -> RaySystem {
    let m = rng.random_range(2..10usize);
    let mut args = vec![0.0];
    for _ in 1..m {
        args.push(rng.random_range(0.0..TAU - 0.06));
    }
    args.sort_by(|a, b| a.partial_cmp(b).unwrap());
    args.dedup_by(|a, b| (*a - *b).abs() < 0.05);
    if args.len() < 2 {
        args.push(std::f64::consts::PI);
    }
    let points = args
        .iter()
        .map(|&t| Complex64::from_polar(rng.random_range(0.5..2.0), t))
        .collect();
    RaySystem::new(points).unwrap()
}
