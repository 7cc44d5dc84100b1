//! Command-line front end: bound evaluation, radius computation, ray-system
//! functional evaluation, and randomized verification sweeps, with
//! machine-readable output.
//!
//! Exit status: 0 on success, 1 on a hypothesis or validation failure
//! (including a verified inequality that does not hold), 2 on I/O or parse
//! errors.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use polyrad::{
    extremal_bound, inner_radius_analytic, l_gamma, randomized_verification_sweep,
    verify_configuration, wos_inner_radius, BoundParams, CPoint, HypothesisMode, PlanarDomain,
    PolyConfiguration, RaySystem, SweepResult, VerificationReport, WosParams, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "polyrad",
    version,
    about = "Inner radii of planar domains and extremal bound verification over polycylinders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

/// Where the result goes and how it is rendered.
#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// One JSON payload, either from a file (`-` for stdin) or inline.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Path to a JSON input file; `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form upper bound for given m and gamma.
    Bound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        gamma: f64,
        /// Evaluate outside the proven range (m >= 5, 0 < gamma <= m^(1/3))
        /// instead of rejecting it.
        #[arg(long)]
        lax: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute the inner radius of a planar domain at a point.
    ///
    /// Input JSON: {"domain": <shape>, "point": <[re, im] or "inf">},
    /// e.g. {"domain": {"shape": "disk", "center": [0.0, 0.0],
    /// "radius": 1.0}, "point": [0.0, 0.0]}.
    Radius {
        #[command(flatten)]
        input: InputArgs,
        /// Estimate by walk-on-spheres Monte Carlo instead of the analytic
        /// catalog.
        #[arg(long)]
        wos: bool,
        /// Walk-on-spheres: number of walks.
        #[arg(long)]
        walks: Option<usize>,
        /// Walk-on-spheres: epsilon shell half-width.
        #[arg(long)]
        eps: Option<f64>,
        /// Walk-on-spheres: random seed.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate the L functional of a planar ray system.
    ///
    /// Input JSON: {"points": [[re, im], ...]}.
    Lgamma {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the extremal inequality on a polycylindrical configuration.
    ///
    /// Input JSON: a full configuration (gamma, points, domains,
    /// radii_method, wos).
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Evaluate configurations outside the proven hypotheses instead of
        /// rejecting them.
        #[arg(long)]
        lax: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a randomized verification sweep of the extremal inequality.
    Sweep {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// The `radius` subcommand's input payload.
#[derive(Deserialize)]
struct RadiusInput {
    domain: PlanarDomain,
    point: CPoint,
}

/// The `radius` subcommand's output payload.
#[derive(Serialize)]
struct RadiusOutput {
    value: f64,
    method: &'static str,
    stderr_log: f64,
    ci_low: Option<f64>,
    ci_high: Option<f64>,
}

/// The `lgamma` subcommand's output payload.
#[derive(Serialize)]
struct LgammaOutput {
    gamma: f64,
    m: usize,
    value: f64,
}

/// A failure carrying the process exit status: 1 for hypothesis/validation
/// failures, 2 for I/O or parse errors.
struct Failure {
    status: u8,
    message: String,
}

impl Failure {
    fn validation(message: String) -> Self {
        Failure { status: 1, message }
    }

    fn io(message: String) -> Self {
        Failure { status: 2, message }
    }
}

impl From<polyrad::Error> for Failure {
    fn from(e: polyrad::Error) -> Self {
        Failure::validation(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bound { m, gamma, lax, out } => {
            let mode = if lax {
                HypothesisMode::Lax
            } else {
                HypothesisMode::Strict
            };
            let v = extremal_bound(&BoundParams::new(m, gamma), mode)?;
            let rendered = match out.format {
                Format::Json => to_json(&v)?,
                Format::Csv => format!(
                    "m,gamma,bound,out_of_hypothesis\n{m},{gamma},{},{}\n",
                    fmt_f64(v.value),
                    v.out_of_hypothesis
                ),
                Format::Plain => {
                    let mut s = format!("bound(m={m}, gamma={gamma}) = {}\n", fmt_f64(v.value));
                    if v.out_of_hypothesis {
                        s.push_str("note: parameters lie outside the proven range\n");
                    }
                    s
                }
            };
            emit(&out, &rendered)
        }
        Command::Radius {
            input,
            wos,
            walks,
            eps,
            seed,
            out,
        } => {
            let parsed: RadiusInput = read_input(&input)?;
            let result = if wos {
                let mut params = WosParams::default();
                if let Some(w) = walks {
                    params.walks = w;
                }
                if let Some(e) = eps {
                    params.epsilon_shell = e;
                }
                if let Some(s) = seed {
                    params.seed = s;
                }
                let est = wos_inner_radius(&parsed.domain, parsed.point, &params)?;
                RadiusOutput {
                    value: est.radius,
                    method: "monte_carlo",
                    stderr_log: est.stderr_log,
                    ci_low: Some(est.radius_ci_low),
                    ci_high: Some(est.radius_ci_high),
                }
            } else {
                let r = inner_radius_analytic(&parsed.domain, parsed.point)?;
                RadiusOutput {
                    value: r.value,
                    method: "analytic",
                    stderr_log: 0.0,
                    ci_low: None,
                    ci_high: None,
                }
            };
            let rendered = match out.format {
                Format::Json => to_json(&result)?,
                Format::Csv => format!(
                    "value,method,stderr_log\n{},{},{}\n",
                    fmt_f64(result.value),
                    result.method,
                    fmt_f64(result.stderr_log)
                ),
                Format::Plain => match (result.ci_low, result.ci_high) {
                    (Some(lo), Some(hi)) => format!(
                        "radius = {} (99% CI [{}, {}], {})\n",
                        fmt_f64(result.value),
                        fmt_f64(lo),
                        fmt_f64(hi),
                        result.method
                    ),
                    _ => format!("radius = {} ({})\n", fmt_f64(result.value), result.method),
                },
            };
            emit(&out, &rendered)
        }
        Command::Lgamma { input, gamma, out } => {
            let system: RaySystem = read_input(&input)?;
            let value = l_gamma(&system, gamma)?;
            let result = LgammaOutput {
                gamma,
                m: system.len(),
                value,
            };
            let rendered = match out.format {
                Format::Json => to_json(&result)?,
                Format::Csv => format!("gamma,m,value\n{gamma},{},{}\n", result.m, fmt_f64(value)),
                Format::Plain => format!(
                    "L^({gamma}) = {} for the {}-point system\n",
                    fmt_f64(value),
                    result.m
                ),
            };
            emit(&out, &rendered)
        }
        Command::Verify { input, lax, out } => {
            let config: PolyConfiguration = read_input(&input)?;
            let mode = if lax {
                HypothesisMode::Lax
            } else {
                HypothesisMode::Strict
            };
            let report = verify_configuration(&config, mode)?;
            let rendered = match out.format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut s = String::from(REPORT_CSV_HEADER);
                    push_report_csv(&mut s, &report);
                    s
                }
                Format::Plain => format!(
                    "J = {} (stderr of ln J: {}), bound = {}, slack = {}: inequality {}\n",
                    fmt_f64(report.j_value),
                    fmt_f64(report.j_stderr),
                    fmt_f64(report.bound),
                    fmt_f64(report.slack),
                    if report.holds { "holds" } else { "FAILS" }
                ),
            };
            emit(&out, &rendered)?;
            if report.holds {
                Ok(())
            } else {
                Err(Failure::validation(
                    "the inequality does not hold on this configuration".into(),
                ))
            }
        }
        Command::Sweep {
            m,
            n,
            gamma,
            trials,
            seed,
            out,
        } => {
            let sweep = randomized_verification_sweep(m, n, gamma, trials, seed)?;
            let rendered = match out.format {
                Format::Json => to_json(&sweep)?,
                Format::Csv => sweep_csv(&sweep),
                Format::Plain => {
                    let failures = sweep.reports.iter().filter(|r| !r.holds).count();
                    format!(
                        "{} trials (skipped {}): min slack {}, {} failure(s)\n",
                        sweep.reports.len(),
                        sweep.skipped,
                        fmt_f64(sweep.min_slack),
                        failures
                    )
                }
            };
            emit(&out, &rendered)?;
            if sweep.reports.iter().all(|r| r.holds) {
                Ok(())
            } else {
                Err(Failure::validation(
                    "at least one sweep trial violates the inequality".into(),
                ))
            }
        }
    }
}

/// Frozen column order for verification reports.
const REPORT_CSV_HEADER: &str = "trial,m,n,gamma,j,stderr,bound,slack,holds\n";

fn push_report_csv(s: &mut String, r: &VerificationReport) {
    let _ = writeln!(
        s,
        "{},{},{},{},{},{},{},{},{}",
        r.trial,
        r.m,
        r.n,
        r.gamma,
        fmt_f64(r.j_value),
        fmt_f64(r.j_stderr),
        fmt_f64(r.bound),
        fmt_f64(r.slack),
        r.holds
    );
}

fn sweep_csv(sweep: &SweepResult) -> String {
    let mut s = String::from(REPORT_CSV_HEADER);
    for r in &sweep.reports {
        push_report_csv(&mut s, r);
    }
    s
}

/// Round-trippable decimal rendering (shortest representation that parses
/// back to the same double).
fn fmt_f64(x: f64) -> String {
    let mut buf = ryu_like(x);
    if !buf.contains(['.', 'e', 'E']) && x.is_finite() {
        buf.push_str(".0");
    }
    buf
}

fn ryu_like(x: f64) -> String {
    // `{}` on f64 is the shortest round-trippable form since Rust 1.0's
    // Grisu/Ryū-style formatting.
    format!("{x}")
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::io(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn read_input<T: for<'de> Deserialize<'de>>(input: &InputArgs) -> Result<T, Failure> {
    let text = match (&input.input, &input.json) {
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(inline)) => inline.clone(),
        _ => unreachable!("clap enforces exactly one input source"),
    };
    serde_json::from_str(&text).map_err(|e| Failure::io(format!("invalid JSON input: {e}")))
}

fn emit(out: &OutputArgs, rendered: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
