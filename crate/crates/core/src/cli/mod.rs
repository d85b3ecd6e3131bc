//! The `billiard-knots` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input or domain error,
//! 3 no caustic root, 4 a check or verification failed, 5 heights infeasible,
//! 6 no generic start parameter, 7 invariant mismatch.

pub mod export;
pub mod pipeline;

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::elliptic::Modulus;
use crate::geometry::{caustic_from_chord, simulate, Ellipse, Line2, Vec2};
use crate::lift::{verify, BilliardKnot3D, VerifyOptions};
use crate::poncelet::{birkhoff_polygon, darboux_residual, graves_spread, polygon, solve_caustic, tol, PonceletError};

pub use pipeline::{run_pipeline, KnotOutput, KnotRequest, PipelineError, PipelineOptions};

pub const LOG_ENV: &str = "BILLIARD_KNOTS_LOG";

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const NO_ROOT: i32 = 3;
    pub const CHECK_FAILED: i32 = 4;
}

/// Tolerances of the `poncelet` checks.
pub mod check_tol {
    pub const SIMULATOR: f64 = 1e-7;
    pub const GRAVES: f64 = 1e-8;
    pub const GRAVES_SAMPLES: usize = 16;
    pub const DARBOUX: f64 = 1e-8;
    pub const SYMMETRY: f64 = 1e-9;
    pub const BIRKHOFF: f64 = 1e-6;
}

#[derive(Debug, Parser)]
#[command(name = "billiard-knots", version, about = "Knots and links as billiard trajectories in an elliptic cylinder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi elliptic functions at one argument.
    Elliptic {
        /// Argument: a number, or a multiple of the quarter period such as `K`, `2K`, `-0.5K`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        k: f64,
    },
    /// Periodic Poncelet polygon in an ellipse, with optional checks.
    Poncelet {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'p')]
        p: usize,
        /// Start parameter of the polygon.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        /// Target accuracy of the rotation number.
        #[arg(long, default_value_t = tol::ROTATION)]
        tol: f64,
        /// Replay the polygon with the reflection simulator.
        #[arg(long)]
        check_simulator: bool,
        /// Perimeter spread over 16 start parameters.
        #[arg(long)]
        check_graves: bool,
        /// Concurrency of the main diagonals (even n).
        #[arg(long)]
        check_darboux: bool,
        /// Central symmetry of the vertices (even n).
        #[arg(long)]
        check_symmetry: bool,
        /// Compare with the perimeter-maximizing polygon through the first vertex.
        #[arg(long)]
        birkhoff: bool,
    },
    /// Reflect a ball in the ellipse and track the caustic of every chord.
    Simulate {
        #[command(flatten)]
        table: TableArgs,
        /// Eccentric anomaly of the start point, `(A cos s, B sin s)`.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        start: f64,
        /// Polar angle of the initial direction; must point into the table.
        #[arg(long, allow_hyphen_values = true)]
        direction: f64,
        #[arg(long, default_value_t = 100)]
        bounces: usize,
    },
    /// Build a billiard knot from a request file.
    Knot {
        request: PathBuf,
        /// Knot JSON output (default: the request's `output.json`, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        obj: Option<PathBuf>,
        /// Accept diagrams too large for the bracket state sum.
        #[arg(long)]
        skip_invariant: bool,
    },
    /// Re-verify a knot JSON file (bare knot or `knot` output).
    Verify { file: PathBuf },
    /// Convert a knot JSON file.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, clap::Args)]
pub struct TableArgs {
    /// Semi-axis along x.
    #[arg(short = 'A', default_value_t = 2.0)]
    pub a: f64,
    /// Semi-axis along y.
    #[arg(short = 'B', default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Obj,
    Json,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self { code, message: message.to_string() }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::new(exit::INVALID, e)
}

impl From<PonceletError> for Failure {
    fn from(e: PonceletError) -> Self {
        match e {
            PonceletError::NoRoot { .. } | PonceletError::NotMonotone(_) => Failure::new(exit::NO_ROOT, e),
            e => invalid(e),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run() -> i32 {
    init_logging();
    run_with(std::env::args_os())
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INVALID } else { exit::OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Elliptic { u, k } => cmd_elliptic(&u, k),
        Command::Poncelet {
            table,
            n,
            p,
            phi,
            tol,
            check_simulator,
            check_graves,
            check_darboux,
            check_symmetry,
            birkhoff,
        } => {
            let checks = Checks {
                simulator: check_simulator,
                graves: check_graves,
                darboux: check_darboux,
                symmetry: check_symmetry,
                birkhoff,
            };
            cmd_poncelet(table, (n, p), phi, tol, checks)
        }
        Command::Simulate { table, start, direction, bounces } => cmd_simulate(table, start, direction, bounces),
        Command::Knot { request, out, svg, obj, skip_invariant } => {
            cmd_knot(&request, out, svg, obj, PipelineOptions { skip_invariant })
        }
        Command::Verify { file } => cmd_verify(&file),
        Command::Export { file, format, out } => cmd_export(&file, format, out.as_deref()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))
}

/// Parses `1.5`, `K`, `2K`, `-0.5K`.
pub fn parse_argument(text: &str, m: &Modulus) -> Result<f64, String> {
    let t = text.trim();
    let value = match t.strip_suffix('K') {
        Some(coef) => {
            let c = match coef.trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| format!("bad argument {text:?}"))?,
            };
            c * m.K()
        }
        None => t.parse::<f64>().map_err(|_| format!("bad argument {text:?}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("argument must be finite, got {text:?}"))
    }
}

fn cmd_elliptic(u: &str, k: f64) -> CmdResult {
    let m = Modulus::new(k).map_err(invalid)?;
    let u = parse_argument(u, &m).map_err(invalid)?;
    let t = m.sn_cn_dn(u);
    let out = json!({ "u": u, "k": k, "sn": t.sn, "cn": t.cn, "dn": t.dn, "am": m.am(u), "K": m.K() });
    emit(&to_json(&out), None)?;
    Ok(exit::OK)
}

#[derive(Debug, Clone, Copy, Default)]
struct Checks {
    simulator: bool,
    graves: bool,
    darboux: bool,
    symmetry: bool,
    birkhoff: bool,
}

#[derive(Debug, Serialize)]
struct CheckResult {
    residual: f64,
    tolerance: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<Vec2>,
}

impl CheckResult {
    fn new(residual: f64, tolerance: f64) -> Self {
        Self { residual, tolerance, passed: residual < tolerance, point: None }
    }
}

fn table(t: TableArgs) -> Result<Ellipse, Failure> {
    let e = Ellipse::new(t.a, t.b).map_err(invalid)?;
    if e.is_circle() {
        return Err(invalid(PonceletError::Circle));
    }
    Ok(e)
}

fn cmd_poncelet(t: TableArgs, (n, p): (usize, usize), phi: f64, tol: f64, checks: Checks) -> CmdResult {
    let e = table(t)?;
    let frame = solve_caustic(&e, n, p, tol)?;
    let poly = polygon(&frame, n, p, phi)?;
    let mut results = serde_json::Map::new();
    if checks.simulator {
        let v = &poly.vertices;
        let pts = simulate(&e, v[0], v[1] - v[0], n).map_err(invalid)?;
        let residual = (0..=n).map(|j| pts[j].dist(v[j % n])).fold(0.0, f64::max);
        results.insert("simulator".into(), json!(CheckResult::new(residual, check_tol::SIMULATOR)));
    }
    if checks.graves {
        let period = 4.0 * frame.modulus.K();
        let s = check_tol::GRAVES_SAMPLES;
        let phis: Vec<f64> = (0..s).map(|i| phi + period * i as f64 / s as f64).collect();
        let residual = graves_spread(&frame, n, p, &phis)? / poly.perimeter;
        results.insert("graves".into(), json!(CheckResult::new(residual, check_tol::GRAVES)));
    }
    if checks.darboux {
        let r = darboux_residual(&poly)?;
        let mut c = CheckResult::new(r.residual, check_tol::DARBOUX);
        c.point = Some(r.point);
        results.insert("darboux".into(), json!(c));
    }
    if checks.symmetry {
        let residual = poly.central_symmetry_residual()?;
        results.insert("symmetry".into(), json!(CheckResult::new(residual, check_tol::SYMMETRY)));
    }
    if checks.birkhoff {
        let b = birkhoff_polygon(&e, n, p, poly.vertices[0])?;
        let c = CheckResult::new((b.lambda - frame.lambda).abs(), check_tol::BIRKHOFF);
        results.insert("birkhoff".into(), json!(c));
        results.insert(
            "birkhoff_polygon".into(),
            json!({ "lambda": b.lambda, "vertices": b.polygon.vertices, "reflection_residual": b.reflection_residual, "iterations": b.iterations }),
        );
    }
    let passed = results.values().all(|v| v.get("passed").and_then(Value::as_bool).unwrap_or(true));
    let out = json!({
        "ellipse": e,
        "n": n,
        "p": p,
        "phi": phi,
        "frame": pipeline::FrameSummary::new(&frame, n, p),
        "vertices": poly.vertices,
        "tangency_points": poly.tangency_points,
        "perimeter": poly.perimeter,
        "closure_gap": poly.closure_gap(),
        "checks": results,
        "passed": passed,
    });
    emit(&to_json(&out), None)?;
    Ok(if passed { exit::OK } else { exit::CHECK_FAILED })
}

fn cmd_simulate(t: TableArgs, start: f64, direction: f64, bounces: usize) -> CmdResult {
    let e = table(t)?;
    let p0 = Vec2::new(e.a * start.cos(), e.b * start.sin());
    let d0 = Vec2::new(direction.cos(), direction.sin());
    if d0.dot(e.outward_normal(p0)) >= 0.0 {
        return Err(invalid(format!("direction {direction} does not point into the table")));
    }
    let pts = simulate(&e, p0, d0, bounces).map_err(invalid)?;
    let lambdas: Vec<Option<f64>> = pts
        .windows(2)
        .map(|w| {
            let l = Line2::through(w[0], w[1]).ok()?;
            caustic_from_chord(&e, &l).ok().map(|c| c.lambda)
        })
        .collect();
    let (lo, hi) =
        lambdas.iter().flatten().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &l| (lo.min(l), hi.max(l)));
    let spread = if hi >= lo { hi - lo } else { 0.0 };
    let out = json!({
        "ellipse": e,
        "start": p0,
        "direction": d0,
        "points": pts,
        "lambda": lambdas,
        "lambda_spread": spread,
        "start_angle": start.rem_euclid(2.0 * PI),
    });
    emit(&to_json(&out), None)?;
    Ok(exit::OK)
}

fn cmd_knot(
    request: &Path,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    obj: Option<PathBuf>,
    opts: PipelineOptions,
) -> CmdResult {
    let text = read(request)?;
    let req: KnotRequest = serde_json::from_str(&text).map_err(|e| invalid(format!("request: {e}")))?;
    let out_path = out.or_else(|| req.output.json.clone());
    let svg = svg.or_else(|| req.output.svg.clone());
    let obj = obj.or_else(|| req.output.obj.clone());
    let write_all = |o: &KnotOutput| -> Result<(), Failure> {
        emit(&to_json(o), out_path.as_deref())?;
        if let Some(p) = &svg {
            emit(&export::knot_svg(&o.knot), Some(p))?;
        }
        if let Some(p) = &obj {
            emit(&export::knot_obj(&o.knot), Some(p))?;
        }
        Ok(())
    };
    match run_pipeline(&req, opts) {
        Ok(o) => {
            write_all(&o)?;
            Ok(exit::OK)
        }
        Err(e) => {
            if let Some(o) = e.output() {
                write_all(o)?;
            }
            Err(Failure::new(e.exit_code(), e))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KnotFile {
    Wrapped { knot: BilliardKnot3D },
    Bare(BilliardKnot3D),
}

fn load_knot(path: &Path) -> Result<(BilliardKnot3D, VerifyOptions), Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    // Tolerances recorded in a pipeline output are reused.
    let opts =
        value.pointer("/request/tolerances").and_then(|t| serde_json::from_value(t.clone()).ok()).unwrap_or_default();
    let knot = match serde_json::from_value(value) {
        Ok(KnotFile::Wrapped { knot }) | Ok(KnotFile::Bare(knot)) => knot,
        Err(e) => return Err(invalid(format!("{}: not a knot file: {e}", path.display()))),
    };
    Ok((knot, opts))
}

fn cmd_verify(file: &Path) -> CmdResult {
    let (knot, opts) = load_knot(file)?;
    let report = verify(&knot, opts);
    emit(&to_json(&report), None)?;
    Ok(if report.passed { exit::OK } else { exit::CHECK_FAILED })
}

fn cmd_export(file: &Path, format: Format, out: Option<&Path>) -> CmdResult {
    let (knot, _) = load_knot(file)?;
    let text = match format {
        Format::Svg => export::knot_svg(&knot),
        Format::Obj => export::knot_obj(&knot),
        Format::Json => to_json(&knot),
    };
    emit(&text, out)?;
    Ok(exit::OK)
}
