//! Command-line front end. Exit codes: 0 success, 1 failed verify
//! suite, 2 validation error, 3 degenerate geometry.

use arcplot::conic::{
    calibration_number, conjugate_from_implicit, implicit_from_conjugate, translate_from_origin,
    translate_to_origin, CalibrationMode, ConicError,
};
use arcplot::refmodel::RealPoint;
use arcplot::render::{
    pie_chart_demo, render, OutputFormat, RenderError, RenderRequest, ShapeRequest, Spacing,
};
use arcplot::verify::{run_suite, suite_names};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_SUITE_FAILED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "arcplot",
    version,
    about = "Plot ellipses, elliptic arcs, and hyperbolic arcs as polylines\n\
             using fixed-point shift-and-add generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plot a full ellipse
    Ellipse(EllipseArgs),
    /// Plot an elliptic arc
    Arc(ArcArgs),
    /// Plot a hyperbolic arc
    Hyperbola(HyperbolaArgs),
    /// Convert between implicit coefficients and a conjugate triple (JSON)
    Convert(ConvertArgs),
    /// Run a measurement suite and print its JSON report
    Verify(VerifyArgs),
    /// Render the six-pie-chart demo (same slice angles, six placements)
    DemoPie,
}

#[derive(Args)]
struct GeometryArgs {
    /// Center, window coordinates: X,Y in pixels
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: (f64, f64),
    /// First conjugate diameter end point P (absolute): X,Y
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    p: (f64, f64),
    /// Second conjugate diameter end point Q (absolute): X,Y
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    q: (f64, f64),
}

#[derive(Args)]
struct OutputArgs {
    /// Output document format
    #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
    format: FormatArg,
    /// Optional TOML config (keys: flatness, kmax, strict_flatness);
    /// flags win over the file, the file over built-in defaults
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SpacingArgs {
    /// Flatness budget in pixels (largest chord-to-curve gap)
    #[arg(long, conflicts_with = "k", allow_hyphen_values = true)]
    flatness: Option<f64>,
    /// Explicit angular-increment exponent: ε = 1/2^k
    #[arg(long)]
    k: Option<u32>,
    /// Cap on automatically selected k
    #[arg(long)]
    kmax: Option<u32>,
    /// Select k from the exact auxiliary radius and exact sagitta
    #[arg(long)]
    strict_flatness: bool,
}

#[derive(Args)]
struct EllipseArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    spacing: SpacingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ArcArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Arc starting angle in radians, measured from P toward Q
    #[arg(long, allow_hyphen_values = true)]
    start: f64,
    /// Signed sweep angle in radians (|sweep| ≤ 2π)
    #[arg(long, allow_hyphen_values = true)]
    sweep: f64,
    #[command(flatten)]
    spacing: SpacingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HyperbolaArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Starting hyperbolic angle
    #[arg(long, allow_hyphen_values = true)]
    start: f64,
    /// Signed hyperbolic sweep (|sweep| ≤ 8)
    #[arg(long, allow_hyphen_values = true)]
    sweep: f64,
    /// Angular-increment exponent: ε = 1/2^k (required; hyperbolas
    /// have no flatness auto-selection)
    #[arg(long)]
    k: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvertArgs {
    /// Input JSON file; omit or pass "-" for stdin
    input: Option<PathBuf>,
    /// Reject uncalibrated implicit equations instead of rescaling
    #[arg(long)]
    strict_calibration: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: vlen-band, auxradius-band, drift, reversibility, flatness
    suite: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Svg,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Svg => OutputFormat::Svg,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected X,Y but got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("{t:?} is not a number"))
    };
    Ok((parse(x)?, parse(y)?))
}

/// Optional config file; flags override these, these override defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    flatness: Option<f64>,
    kmax: Option<u32>,
    strict_flatness: Option<bool>,
}

fn fail(code: &str, message: &str, exit: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": code, "message": message }));
    ExitCode::from(exit)
}

fn fail_render(err: &RenderError) -> ExitCode {
    let exit = if err.is_degenerate() {
        EXIT_DEGENERATE
    } else {
        EXIT_VALIDATION
    };
    fail(err.code(), &err.to_string(), exit)
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, (String, String)> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| ("config-unreadable".to_string(), format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| ("config-invalid".to_string(), e.to_string()))
}

fn resolve_request(
    spacing: &SpacingArgs,
    output: &OutputArgs,
    shape: ShapeRequest,
) -> Result<RenderRequest, (String, String)> {
    let cfg = load_config(&output.config)?;
    let spacing_choice = match (spacing.k, spacing.flatness) {
        (Some(k), _) => Spacing::ExplicitK(k),
        (None, Some(f)) => Spacing::Flatness(f),
        (None, None) => Spacing::Flatness(cfg.flatness.unwrap_or(0.25)),
    };
    let mut req = RenderRequest::new(shape, spacing_choice, output.format.into());
    req.kmax = spacing
        .kmax
        .or(cfg.kmax)
        .unwrap_or(arcplot::flatness::DEFAULT_KMAX);
    req.strict_flatness = spacing.strict_flatness || cfg.strict_flatness.unwrap_or(false);
    Ok(req)
}

fn run_render(req: &RenderRequest) -> ExitCode {
    match render(req) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.document);
            ExitCode::SUCCESS
        }
        Err(e) => fail_render(&e),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConjugateJson {
    center: [f64; 2],
    p: [f64; 2],
    q: [f64; 2],
}

/// Exactly one of `implicit` / `conjugate`; a stray `delta` from a
/// previous conversion's output is accepted and ignored, so outputs
/// feed straight back in.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConvertInput {
    implicit: Option<arcplot::ImplicitConic>,
    conjugate: Option<ConjugateJson>,
    #[serde(default)]
    #[allow(dead_code)]
    delta: Option<f64>,
}

fn conic_exit(e: &ConicError) -> u8 {
    match e {
        ConicError::Degenerate | ConicError::NotAnEllipse | ConicError::NotReal => EXIT_DEGENERATE,
        ConicError::NotCentered | ConicError::NotCalibrated { .. } => EXIT_VALIDATION,
    }
}

fn conic_code(e: &ConicError) -> &'static str {
    match e {
        ConicError::Degenerate => "degenerate-geometry",
        ConicError::NotAnEllipse => "not-an-ellipse",
        ConicError::NotReal => "not-real",
        ConicError::NotCentered => "not-centered",
        ConicError::NotCalibrated { .. } => "not-calibrated",
    }
}

fn run_convert(args: &ConvertArgs) -> ExitCode {
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => return fail("input-unreadable", &format!("{}: {e}", p.display()), EXIT_VALIDATION),
        },
        _ => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                return fail("input-unreadable", &e.to_string(), EXIT_VALIDATION);
            }
            buf
        }
    };
    let input: ConvertInput = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return fail("invalid-json", &e.to_string(), EXIT_VALIDATION),
    };

    let result = match (input.implicit, input.conjugate) {
        (Some(c), None) => {
            let mode = if args.strict_calibration {
                CalibrationMode::Strict
            } else {
                CalibrationMode::Auto
            };
            translate_to_origin(&c)
                .and_then(|(centered, center)| {
                    conjugate_from_implicit(&centered, mode).map(|rec| (rec, center))
                })
                .map(|(rec, center)| {
                    json!({
                        "conjugate": {
                            "center": [center.x, center.y],
                            "p": [center.x + rec.p.x, center.y + rec.p.y],
                            "q": [center.x + rec.q.x, center.y + rec.q.y],
                        },
                        "delta": rec.delta,
                    })
                })
        }
        (None, Some(ConjugateJson { center, p, q })) => {
            let c = RealPoint::new(center[0], center[1]);
            let rel_p = RealPoint::new(p[0] - c.x, p[1] - c.y);
            let rel_q = RealPoint::new(q[0] - c.x, q[1] - c.y);
            implicit_from_conjugate(rel_p, rel_q).map(|centered| {
                let delta = calibration_number(&centered).expect("fresh coefficients calibrate");
                let moved = translate_from_origin(&centered, c);
                json!({ "implicit": moved, "delta": delta })
            })
        }
        _ => {
            return fail(
                "invalid-json",
                "provide exactly one of \"implicit\" or \"conjugate\"",
                EXIT_VALIDATION,
            )
        }
    };

    match result {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
            ExitCode::SUCCESS
        }
        Err(e) => fail(conic_code(&e), &e.to_string(), conic_exit(&e)),
    }
}

fn run_verify(args: &VerifyArgs) -> ExitCode {
    match run_suite(&args.suite) {
        Some(report) => {
            print!("{}", report.to_json());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_SUITE_FAILED)
            }
        }
        None => fail(
            "unknown-suite",
            &format!("unknown suite {:?}; available: {}", args.suite, suite_names().join(", ")),
            EXIT_VALIDATION,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Ellipse(args) => {
            let shape = ShapeRequest::Ellipse {
                center: args.geometry.center,
                p: args.geometry.p,
                q: args.geometry.q,
            };
            match resolve_request(&args.spacing, &args.output, shape) {
                Ok(req) => run_render(&req),
                Err((code, msg)) => fail(&code, &msg, EXIT_VALIDATION),
            }
        }
        Command::Arc(args) => {
            let shape = ShapeRequest::Arc {
                center: args.geometry.center,
                p: args.geometry.p,
                q: args.geometry.q,
                start: args.start,
                sweep: args.sweep,
            };
            match resolve_request(&args.spacing, &args.output, shape) {
                Ok(req) => run_render(&req),
                Err((code, msg)) => fail(&code, &msg, EXIT_VALIDATION),
            }
        }
        Command::Hyperbola(args) => {
            let shape = ShapeRequest::Hyperbola {
                center: args.geometry.center,
                p: args.geometry.p,
                q: args.geometry.q,
                start: args.start,
                sweep: args.sweep,
            };
            let req = RenderRequest::new(shape, Spacing::ExplicitK(args.k), args.output.format.into());
            run_render(&req)
        }
        Command::Convert(args) => run_convert(&args),
        Command::Verify(args) => run_verify(&args),
        Command::DemoPie => {
            print!("{}", pie_chart_demo());
            ExitCode::SUCCESS
        }
    }
}
