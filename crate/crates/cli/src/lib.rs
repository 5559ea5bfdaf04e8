//! Command dispatch for the `simcurve` binary.
//!
//! [`run_command`] never panics on bad input: every failure becomes exit
//! status 2 with a one-line JSON object on standard error.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simcurve::analysis::{classify, ClassifyTolerances, CurveClass};
use simcurve::generators::{gen_general_helix, gen_plane_curve, gen_salkowski, gen_slant_helix};
use simcurve::io::{
    classification_json, parse_profile_file, read_curve_csv, similarity_json, svg_projection, write_curve_csv,
    IoError, Plane,
};
use simcurve::similarity::{check_similar, make_transformation, partner_domain, similar_partner, SimilarityTolerances};
use simcurve::{integrate_frenet, FrenetFrame, Interval, IntrinsicProfile, SampledCurve, ScalarField, Vec3};

mod verify;

pub use verify::{run_suite, SUITES};

/// Exit status for success or a true verdict.
pub const EXIT_OK: i32 = 0;
/// Exit status for a predicate that evaluated to false.
pub const EXIT_FALSE: i32 = 1;
/// Exit status for any error.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "simcurve", version, about = "Space curves from curvature and torsion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    /// Plane curve from the profile's curvature.
    Plane,
    /// General helix with `<T, e3> = n`.
    Helix,
    /// Slant helix with `<N, e3> = n`.
    Slant,
    /// Salkowski curve; the domain is the range of the parameter `t`.
    Salkowski,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Projection plane for SVG output: xy, yz or xz.
    #[arg(long, default_value = "xy")]
    pub plane: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sample a closed-form curve family.
    Generate {
        #[arg(long, value_enum)]
        kind: GeneratorKind,
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Angle parameter in (0, 1).
        #[arg(long)]
        n: Option<f64>,
        /// Domain override `start,end`.
        #[arg(long, value_parser = parse_domain)]
        domain: Option<(f64, f64)>,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Integrate the Frenet system from the canonical frame at the origin.
    Integrate {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_parser = parse_domain)]
        domain: Option<(f64, f64)>,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Classify a curve read from CSV or integrated from a profile.
    Classify {
        #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
        curve: Option<PathBuf>,
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, value_parser = parse_domain)]
        domain: Option<(f64, f64)>,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Exit with status 1 unless this label is assigned.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Check the similarity relation between two profiles.
    Similar {
        #[arg(long)]
        alpha: PathBuf,
        /// Partner profile; its transformation is solved from the curvatures.
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
        beta: Option<PathBuf>,
        /// Expression for `ds_alpha/ds_beta` in `s`; the partner is constructed.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run a named verification suite.
    Verify {
        /// One of the names listed by `--list`.
        #[arg(long, required_unless_present = "list")]
        test: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: Output,
    },
}

/// A fully parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
}

impl RunConfig {
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Ok(RunConfig {
            command: Cli::try_parse_from(args)?.command,
        })
    }
}

fn parse_domain(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text.split_once(',').ok_or("expected `start,end`")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    Ok((a, b))
}

/// Failure carried to the error JSON.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl CliError {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        CliError {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind, "message": self.message})
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

impl From<simcurve::CurveError> for CliError {
    fn from(e: simcurve::CurveError) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new("IoError", format!("{}: {e}", path.display())))
}

fn load_profile(path: &Path, domain: Option<(f64, f64)>) -> CliResult<IntrinsicProfile> {
    let p = parse_profile_file(&read_text(path)?)?;
    match domain {
        None => Ok(p),
        Some((a, b)) => Ok(IntrinsicProfile::new(p.kappa().clone(), p.tau().clone(), Interval::new(a, b)?)?),
    }
}

fn check_step(step: f64) -> CliResult<()> {
    if step.is_finite() && step > 0.0 {
        Ok(())
    } else {
        Err(CliError::new("InvalidParameter", format!("step must be positive, got {step}")))
    }
}

fn emit(out: &Output, bytes: &[u8], sink: &mut dyn Write) -> CliResult<()> {
    match &out.output {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::new("IoError", format!("{}: {e}", path.display()))),
        None => sink.write_all(bytes).map_err(|e| CliError::new("IoError", e.to_string())),
    }
}

fn format_for(out: &Output, default: Format, allowed: &[Format], command: &str) -> CliResult<Format> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::new(
            "InvalidParameter",
            format!("format {f:?} is not available for `{command}`"),
        ))
    }
}

fn write_curve(curve: &SampledCurve, out: &Output, command: &str, sink: &mut dyn Write) -> CliResult<()> {
    let bytes = match format_for(out, Format::Csv, &[Format::Csv, Format::Svg], command)? {
        Format::Svg => {
            let plane: Plane = out.plane.parse().map_err(|e: String| CliError::new("InvalidParameter", e))?;
            svg_projection(&curve.positions(), plane, 512.0).into_bytes()
        }
        _ => {
            let mut buf = Vec::new();
            write_curve_csv(curve, &mut buf)?;
            buf
        }
    };
    emit(out, &bytes, sink)
}

fn write_json(value: &Value, out: &Output, command: &str, sink: &mut dyn Write) -> CliResult<()> {
    format_for(out, Format::Json, &[Format::Json], command)?;
    let mut text = serde_json::to_string_pretty(value).expect("report values serialize");
    text.push('\n');
    emit(out, text.as_bytes(), sink)
}

fn integrate_canonical(profile: &IntrinsicProfile, step: f64) -> CliResult<SampledCurve> {
    let step = step.min(profile.domain().len() / 4.0);
    Ok(integrate_frenet(profile, FrenetFrame::canonical(), Vec3::zeros(), step)?)
}

fn require_n(n: Option<f64>) -> CliResult<f64> {
    n.ok_or_else(|| CliError::new("SchemaError", "--n is required for this generator"))
}

fn generate(
    kind: GeneratorKind,
    profile: Option<&Path>,
    n: Option<f64>,
    domain: Option<(f64, f64)>,
    step: f64,
) -> CliResult<SampledCurve> {
    check_step(step)?;
    if kind == GeneratorKind::Salkowski {
        let n = require_n(n)?;
        let (a, b) = domain.ok_or_else(|| CliError::new("SchemaError", "--domain (range of t) is required"))?;
        let t_range = Interval::new(a, b)?;
        // Arclength of the range, to match the requested step.
        let m = n / (1.0 - n * n).sqrt();
        let len = ((n * b).sin() - (n * a).sin()).abs() / m;
        let samples = ((len / step).ceil() as usize + 1).max(9);
        return Ok(gen_salkowski(n, t_range, samples)?);
    }
    let path = profile.ok_or_else(|| CliError::new("SchemaError", "--profile is required for this generator"))?;
    let p = load_profile(path, domain)?;
    let curve = match kind {
        GeneratorKind::Plane => gen_plane_curve(p.kappa(), p.domain(), step)?,
        GeneratorKind::Helix => gen_general_helix(p.kappa(), require_n(n)?, p.domain(), step)?,
        GeneratorKind::Slant => gen_slant_helix(p.kappa(), require_n(n)?, p.domain(), step)?,
        GeneratorKind::Salkowski => unreachable!(),
    };
    Ok(curve)
}

fn similar(alpha: &Path, beta: Option<&Path>, lambda: Option<&str>, step: f64) -> CliResult<Value> {
    check_step(step)?;
    let pa = load_profile(alpha, None)?;
    let (pb, t) = match (beta, lambda) {
        (Some(path), _) => {
            let pb = load_profile(path, None)?;
            let t = make_transformation(pa.kappa(), pa.domain(), pb.kappa(), pb.domain())?;
            (pb, t)
        }
        (None, Some(text)) => {
            let lambda = ScalarField::parse_expression(text).map_err(|e| CliError::new("SchemaError", e.to_string()))?;
            let domain = partner_domain(&lambda, pa.domain(), 0.0)?;
            similar_partner(&pa, lambda, domain)?
        }
        (None, None) => return Err(CliError::new("SchemaError", "either --beta or --lambda is required")),
    };
    let ca = integrate_canonical(&pa, step)?;
    let cb = integrate_canonical(&pb, step)?;
    let report = check_similar(&ca, &cb, &t, &SimilarityTolerances::default())?;
    Ok(similarity_json(&report))
}

fn dispatch(config: &RunConfig, sink: &mut dyn Write) -> CliResult<bool> {
    match &config.command {
        Command::Generate {
            kind,
            profile,
            n,
            domain,
            step,
            out,
        } => {
            let curve = generate(*kind, profile.as_deref(), *n, *domain, *step)?;
            write_curve(&curve, out, "generate", sink)?;
            Ok(true)
        }
        Command::Integrate {
            profile,
            domain,
            step,
            out,
        } => {
            check_step(*step)?;
            let curve = integrate_canonical(&load_profile(profile, *domain)?, *step)?;
            write_curve(&curve, out, "integrate", sink)?;
            Ok(true)
        }
        Command::Classify {
            curve,
            profile,
            domain,
            step,
            expect,
            out,
        } => {
            let expected = match expect {
                None => None,
                Some(name) => Some(
                    CurveClass::from_name(name)
                        .ok_or_else(|| CliError::new("InvalidParameter", format!("unknown class `{name}`")))?,
                ),
            };
            let c = match (curve, profile) {
                (Some(path), _) => read_curve_csv(read_text(path)?.as_bytes())?,
                (None, Some(path)) => {
                    check_step(*step)?;
                    integrate_canonical(&load_profile(path, *domain)?, *step)?
                }
                (None, None) => return Err(CliError::new("SchemaError", "either --curve or --profile is required")),
            };
            let report = classify(&c, &ClassifyTolerances::default())?;
            let mut value = classification_json(&report);
            let verdict = expected.is_none_or(|e| report.has(e));
            if let Some(e) = expected {
                value["verdicts"] = json!({ e.name(): verdict });
            }
            write_json(&value, out, "classify", sink)?;
            Ok(verdict)
        }
        Command::Similar {
            alpha,
            beta,
            lambda,
            step,
            out,
        } => {
            let value = similar(alpha, beta.as_deref(), lambda.as_deref(), *step)?;
            write_json(&value, out, "similar", sink)?;
            Ok(value["verdicts"]["overall"] == json!(true))
        }
        Command::Verify { test, list, out } => {
            if *list {
                let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                write_json(&json!({ "suites": names }), out, "verify", sink)?;
                return Ok(true);
            }
            let name = test.as_deref().unwrap_or_default();
            let value = run_suite(name).ok_or_else(|| {
                CliError::new("InvalidParameter", format!("unknown suite `{name}`; try --list"))
            })??;
            write_json(&value, out, "verify", sink)?;
            Ok(value["verdicts"]["overall"] == json!(true))
        }
    }
}

/// Runs one command, writing artifacts to disk or `stdout` and errors to `stderr`.
/// Returns the process exit status.
pub fn run_command(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(config, stdout) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FALSE,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            EXIT_ERROR
        }
    }
}
