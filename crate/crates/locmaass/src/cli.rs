//! Command-line front end: evaluation, verification suites, geodesic atlas,
//! and JSON/CSV/SVG export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! validation error, 4 capacity/convergence error.

use crate::error::Error;
use crate::evaluators::{eval_big_f, eval_f, EvalResult, SumConfig, Truncation};
use crate::geodesics::{geodesic_of_form, predicted_jump, ArcKind};
use crate::poincare::{eval_poincare, PoincareSpec};
use crate::qforms::{QForm, UHPoint};
use crate::specfun::KernelParams;
use crate::theta::{eval_theta, eval_theta_star, ThetaPoint};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const SCHEMA: &str = "locmaass/1";

/// Cap the rayon worker count from LOCMAASS_THREADS (default: all cores).
pub fn init_thread_pool() {
    if let Ok(v) = std::env::var("LOCMAASS_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// "re,im" (or a bare real part).
fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a] => Ok((a.trim().parse().map_err(|e| format!("{e}"))?, 0.0)),
        [a, b] => Ok((
            a.trim().parse().map_err(|e| format!("{e}"))?,
            b.trim().parse().map_err(|e| format!("{e}"))?,
        )),
        _ => Err(format!("expected 'a,b', got '{s}'")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "locmaass", version, about = "Local Maass forms, indefinite theta kernels and their verification suites", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f_{k,s,D}(z), the weight-2k local Maass form.
    #[command(name = "eval-f")]
    EvalF(EvalArgs),
    /// Evaluate F_{1-k,s,D}(z), the weight-(2-2k) local Maass form.
    #[command(name = "eval-F")]
    EvalBigF(EvalArgs),
    /// Evaluate the theta kernels Theta and Theta* at (z, tau).
    #[command(name = "eval-theta")]
    EvalTheta(ThetaArgs),
    /// Evaluate the weight-(k+1/2) Poincare series at tau.
    #[command(name = "eval-poincare")]
    EvalPoincare(PoincareArgs),
    /// Predicted two-sided jump of F_{1-k,s,D} at a point of E_D.
    Jump(JumpArgs),
    /// Geodesic arcs of E_D (SVG atlas, CSV, or JSON).
    Geodesics(GeodesicsArgs),
    /// Run a verification suite (or `all`) and print PASS/FAIL lines.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Even weight parameter k >= 2.
    #[arg(long = "k")]
    pub k: u32,
    /// Positive discriminant, 0 or 1 mod 4.
    #[arg(long = "D")]
    pub d: i64,
    /// Spectral parameter "re,im".
    #[arg(long = "s", value_parser = parse_pair, allow_hyphen_values = true)]
    pub s: (f64, f64),
    /// Evaluation point "x,y" with y > 0.
    #[arg(long = "z", value_parser = parse_pair, allow_hyphen_values = true)]
    pub z: (f64, f64),
    /// Adaptive shell tolerance (default 1e-4; ignored when --qz2-max is set).
    #[arg(long = "tol")]
    pub tol: Option<f64>,
    /// Fixed truncation on Q_z^2.
    #[arg(long = "qz2-max")]
    pub qz2_max: Option<f64>,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Weight parameter k >= 1.
    #[arg(long = "k")]
    pub k: u32,
    /// Lift variable "x,y".
    #[arg(long = "z", value_parser = parse_pair, allow_hyphen_values = true)]
    pub z: (f64, f64),
    /// Kernel variable "u,v".
    #[arg(long = "tau", value_parser = parse_pair, allow_hyphen_values = true)]
    pub tau: (f64, f64),
    /// Gaussian dropped-mass target (default 1e-12).
    #[arg(long = "tol")]
    pub tol: Option<f64>,
    /// Fixed majorant cutoff (overrides --tol).
    #[arg(long = "qz2-max")]
    pub qz2_max: Option<f64>,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PoincareArgs {
    /// Weight parameter: the series has weight k + 1/2.
    #[arg(long = "k")]
    pub k: u32,
    /// Seed index (discriminant label), nonzero.
    #[arg(long = "D")]
    pub d: i64,
    /// Spectral parameter "re,im" with Re(s) > 1.
    #[arg(long = "s", value_parser = parse_pair, allow_hyphen_values = true)]
    pub s: (f64, f64),
    /// Evaluation point "u,v".
    #[arg(long = "tau", value_parser = parse_pair, allow_hyphen_values = true)]
    pub tau: (f64, f64),
    /// Coset truncation in c (default 150).
    #[arg(long = "c-max", default_value_t = 150)]
    pub c_max: i64,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JumpArgs {
    #[arg(long = "k")]
    pub k: u32,
    #[arg(long = "D")]
    pub d: i64,
    #[arg(long = "s", value_parser = parse_pair, allow_hyphen_values = true)]
    pub s: (f64, f64),
    /// Point on E_D, "x,y".
    #[arg(long = "z", value_parser = parse_pair, allow_hyphen_values = true)]
    pub z: (f64, f64),
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeodesicsArgs {
    #[arg(long = "D")]
    pub d: i64,
    /// Only forms with |a| <= a-max contribute arcs.
    #[arg(long = "a-max", default_value_t = 8)]
    pub a_max: i64,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Svg)]
    pub format: OutputFormat,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name (specfun | collapse | modularity | eigen | xi | hecke |
    /// jump | theta-id) or `all`.
    #[arg(default_value = "all")]
    pub suite: String,
    /// Odd prime for the hecke suite (default 3).
    #[arg(long = "p")]
    pub p: Option<u64>,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) | Error::Convergence(_) => 4,
        _ => 3,
    }
}

fn cref(c: Complex64) -> Value {
    json!({"re": c.re, "im": c.im})
}

fn sum_config(tol: Option<f64>, qz2_max: Option<f64>, default_tol: f64) -> SumConfig {
    match qz2_max {
        Some(t) => SumConfig::with_qz2_max(t),
        None => SumConfig::with_target_tol(tol.unwrap_or(default_tol)),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn eval_json(command: &str, params: Value, res: &EvalResult) -> String {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "value": cref(res.value),
        "tail": res.tail_estimate,
        "forms_used": res.forms_used,
        "min_abs_qz": if res.min_abs_qz.is_finite() { json!(res.min_abs_qz) } else { Value::Null },
    });
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn eval_csv(z: (f64, f64), res: &EvalResult) -> String {
    format!(
        "x,y,re,im,tail,forms_used,min_abs_qz\n{},{},{},{},{},{},{}\n",
        z.0, z.1, res.value.re, res.value.im, res.tail_estimate, res.forms_used, res.min_abs_qz
    )
}

fn run_eval(args: &EvalArgs, negative_weight: bool) -> Result<String, Error> {
    let p = KernelParams::new(args.k, Complex64::new(args.s.0, args.s.1), args.d)?;
    let z = UHPoint::new(args.z.0, args.z.1)?;
    let cfg = sum_config(args.tol, args.qz2_max, 1e-4);
    let (name, res) = if negative_weight {
        ("eval-F", eval_big_f(&p, z, &cfg)?)
    } else {
        ("eval-f", eval_f(&p, z, &cfg)?)
    };
    let params = json!({
        "k": args.k, "D": args.d,
        "s": {"re": args.s.0, "im": args.s.1},
        "z": {"re": args.z.0, "im": args.z.1},
        "tol": args.tol, "qz2_max": args.qz2_max,
    });
    Ok(match args.format {
        OutputFormat::Json => eval_json(name, params, &res),
        OutputFormat::Csv => eval_csv(args.z, &res),
        OutputFormat::Svg => {
            return Err(Error::Domain("svg output applies to the geodesics subcommand".into()))
        }
    })
}

fn run_theta(args: &ThetaArgs) -> Result<String, Error> {
    let pt = ThetaPoint {
        z: UHPoint::new(args.z.0, args.z.1)?,
        tau: UHPoint::new(args.tau.0, args.tau.1)?,
    };
    let cfg = match args.qz2_max {
        Some(t) => SumConfig { truncation: Truncation::Qz2Max(t), ..SumConfig::default() },
        None => SumConfig::with_target_tol(args.tol.unwrap_or(1e-12)),
    };
    let theta = eval_theta(args.k, pt, &cfg)?;
    let theta_star = eval_theta_star(args.k, pt, &cfg)?;
    let params = json!({
        "k": args.k,
        "z": {"re": args.z.0, "im": args.z.1},
        "tau": {"re": args.tau.0, "im": args.tau.1},
        "tol": args.tol, "qz2_max": args.qz2_max,
    });
    Ok(match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "schema": SCHEMA,
            "command": "eval-theta",
            "params": params,
            "theta": cref(theta),
            "theta_star": cref(theta_star),
        }))
        .expect("serializable"),
        OutputFormat::Csv => format!(
            "zx,zy,tu,tv,theta_re,theta_im,theta_star_re,theta_star_im\n{},{},{},{},{},{},{},{}\n",
            args.z.0, args.z.1, args.tau.0, args.tau.1,
            theta.re, theta.im, theta_star.re, theta_star.im
        ),
        OutputFormat::Svg => {
            return Err(Error::Domain("svg output applies to the geodesics subcommand".into()))
        }
    })
}

fn run_poincare(args: &PoincareArgs) -> Result<String, Error> {
    let spec = PoincareSpec::new(
        args.k as f64 + 0.5,
        Complex64::new(args.s.0, args.s.1),
        args.d,
        args.c_max,
    )?;
    let tau = UHPoint::new(args.tau.0, args.tau.1)?;
    let value = eval_poincare(&spec, tau)?;
    let params = json!({
        "k": args.k, "D": args.d,
        "s": {"re": args.s.0, "im": args.s.1},
        "tau": {"re": args.tau.0, "im": args.tau.1},
        "c_max": args.c_max,
    });
    Ok(match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "schema": SCHEMA,
            "command": "eval-poincare",
            "params": params,
            "value": cref(value),
        }))
        .expect("serializable"),
        OutputFormat::Csv => format!(
            "tu,tv,re,im\n{},{},{},{}\n",
            args.tau.0, args.tau.1, value.re, value.im
        ),
        OutputFormat::Svg => {
            return Err(Error::Domain("svg output applies to the geodesics subcommand".into()))
        }
    })
}

fn run_jump(args: &JumpArgs) -> Result<String, Error> {
    let p = KernelParams::new(args.k, Complex64::new(args.s.0, args.s.1), args.d)?;
    let z = UHPoint::new(args.z.0, args.z.1)?;
    let value = predicted_jump(z, &p)?;
    let vanishing = crate::geodesics::vanishing_forms(z, args.d, 1e-9)?;
    let params = json!({
        "k": args.k, "D": args.d,
        "s": {"re": args.s.0, "im": args.s.1},
        "z": {"re": args.z.0, "im": args.z.1},
    });
    Ok(match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "schema": SCHEMA,
            "command": "jump",
            "params": params,
            "value": cref(value),
            "vanishing_forms": vanishing.forms.iter()
                .map(|q| json!([q.a, q.b, q.c])).collect::<Vec<_>>(),
        }))
        .expect("serializable"),
        OutputFormat::Csv => {
            format!("x,y,re,im\n{},{},{},{}\n", args.z.0, args.z.1, value.re, value.im)
        }
        OutputFormat::Svg => {
            return Err(Error::Domain("svg output applies to the geodesics subcommand".into()))
        }
    })
}

/// Deduplicated arcs of E_D from forms with |a| <= a_max restricted to the
/// viewport strip |x| <= 1.5.
fn atlas_arcs(d: i64, a_max: i64) -> Result<Vec<(QForm, ArcKind)>, Error> {
    if d <= 0 || !(d % 4 == 0 || d % 4 == 1) {
        return Err(Error::Domain(format!(
            "discriminant D={d} must be positive and congruent to 0 or 1 mod 4"
        )));
    }
    let mut arcs: Vec<(QForm, ArcKind)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push = |q: QForm, arcs: &mut Vec<(QForm, ArcKind)>| {
        if let Ok(arc) = geodesic_of_form(&q) {
            let key = match arc.kind {
                ArcKind::Semicircle { center, radius } => {
                    (0u8, (center * 1e9).round() as i64, (radius * 1e9).round() as i64)
                }
                ArcKind::Vertical { x0 } => (1u8, (x0 * 1e9).round() as i64, 0),
            };
            if seen.insert(key) {
                arcs.push((q, arc.kind));
            }
        }
    };
    // a = 0: vertical lines (square discriminants only).
    let sq = (d as f64).sqrt().round() as i64;
    if sq * sq == d {
        for b in [sq, -sq] {
            // x0 = -c/b within the viewport
            for c in -(2 * sq.abs() + 2)..=(2 * sq.abs() + 2) {
                let x0 = -c as f64 / b as f64;
                if x0.abs() <= 1.5 {
                    push(QForm::new(0, b, c), &mut arcs);
                }
            }
        }
    }
    for a in 1..=a_max {
        // center -b/(2a) within reach of the viewport
        let b_bound = 3 * a + sq + 2;
        for b in -b_bound..=b_bound {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            for q in [QForm::new(a, b, c), QForm::new(-a, -b, -c)] {
                let center = -q.b as f64 / (2.0 * q.a as f64);
                let radius = (d as f64).sqrt() / (2.0 * q.a.unsigned_abs() as f64);
                if center.abs() - radius <= 1.5 {
                    push(q, &mut arcs);
                }
            }
        }
    }
    arcs.sort_by_key(|(q, _)| (q.a, q.b, q.c));
    Ok(arcs)
}

fn geodesics_svg(arcs: &[(QForm, ArcKind)]) -> String {
    let mut s = String::new();
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.5 0 3 2\" width=\"600\" height=\"400\">\n",
    );
    // Frame and guides: real axis, |x| = 1/2 lines, unit semicircle.
    s.push_str("  <rect x=\"-1.5\" y=\"0\" width=\"3\" height=\"2\" fill=\"white\"/>\n");
    s.push_str("  <line x1=\"-1.5\" y1=\"2\" x2=\"1.5\" y2=\"2\" stroke=\"black\" stroke-width=\"0.012\"/>\n");
    for x in [-0.5f64, 0.5] {
        s.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"2\" stroke=\"#bbbbbb\" stroke-width=\"0.006\" stroke-dasharray=\"0.05,0.05\"/>\n"
        ));
    }
    s.push_str("  <path d=\"M -1 2 A 1 1 0 0 1 1 2\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.006\" stroke-dasharray=\"0.05,0.05\"/>\n");
    for (_, kind) in arcs {
        match kind {
            ArcKind::Semicircle { center, radius } => {
                // y-flip: the real axis sits at viewport y = 2.
                s.push_str(&format!(
                    "  <path d=\"M {} 2 A {radius} {radius} 0 0 1 {} 2\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"0.008\"/>\n",
                    center - radius,
                    center + radius
                ));
            }
            ArcKind::Vertical { x0 } => {
                s.push_str(&format!(
                    "  <line x1=\"{x0}\" y1=\"0\" x2=\"{x0}\" y2=\"2\" stroke=\"#1f5fa8\" stroke-width=\"0.008\"/>\n"
                ));
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn run_geodesics(args: &GeodesicsArgs) -> Result<String, Error> {
    let arcs = atlas_arcs(args.d, args.a_max)?;
    Ok(match args.format {
        OutputFormat::Svg => geodesics_svg(&arcs),
        OutputFormat::Csv => {
            let mut s = String::from("a,b,c,kind,center,radius\n");
            for (q, kind) in &arcs {
                match kind {
                    ArcKind::Semicircle { center, radius } => {
                        s.push_str(&format!("{},{},{},semicircle,{center},{radius}\n", q.a, q.b, q.c));
                    }
                    ArcKind::Vertical { x0 } => {
                        s.push_str(&format!("{},{},{},vertical,{x0},\n", q.a, q.b, q.c));
                    }
                }
            }
            s
        }
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "schema": SCHEMA,
            "command": "geodesics",
            "params": {"D": args.d, "a_max": args.a_max},
            "arcs": arcs.iter().map(|(q, kind)| match kind {
                ArcKind::Semicircle { center, radius } => json!({
                    "a": q.a, "b": q.b, "c": q.c,
                    "kind": "semicircle", "center": center, "radius": radius,
                }),
                ArcKind::Vertical { x0 } => json!({
                    "a": q.a, "b": q.b, "c": q.c,
                    "kind": "vertical", "x0": x0,
                }),
            }).collect::<Vec<_>>(),
        }))
        .expect("serializable"),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<(String, bool), Error> {
    let results = if args.suite == "all" {
        crate::verify::run_all_with(args.p.unwrap_or(3))?
    } else {
        crate::verify::run_suite_with(&args.suite, args.p.unwrap_or(3))?
    };
    let mut text = String::new();
    let mut all_pass = true;
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
        all_pass &= r.passed();
    }
    text.push_str(&format!(
        "{}: {} checks, {} failed\n",
        if all_pass { "OK" } else { "FAILED" },
        results.len(),
        results.iter().filter(|r| !r.passed()).count()
    ));
    Ok((text, all_pass))
}

/// Execute a parsed command; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome: Result<(String, Option<&PathBuf>, i32), Error> = match &cli.command {
        Command::EvalF(args) => run_eval(args, false).map(|t| (t, args.out.as_ref(), 0)),
        Command::EvalBigF(args) => run_eval(args, true).map(|t| (t, args.out.as_ref(), 0)),
        Command::EvalTheta(args) => run_theta(args).map(|t| (t, args.out.as_ref(), 0)),
        Command::EvalPoincare(args) => run_poincare(args).map(|t| (t, args.out.as_ref(), 0)),
        Command::Jump(args) => run_jump(args).map(|t| (t, args.out.as_ref(), 0)),
        Command::Geodesics(args) => run_geodesics(args).map(|t| (t, args.out.as_ref(), 0)),
        Command::Verify(args) => {
            run_verify(args).map(|(t, ok)| (t, args.out.as_ref(), if ok { 0 } else { 1 }))
        }
    };
    match outcome {
        Ok((text, out, code)) => {
            if let Err(e) = emit(&text, out) {
                eprintln!("error: failed to write output: {e}");
                return 4;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
