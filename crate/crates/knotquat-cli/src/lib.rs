//! Command logic for the `knotquat` binary.
//!
//! Every command writes to a caller-supplied sink so that the same code
//! serves the binary, the integration tests and the acceptance suite.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotquat::affine::{affine_ideal_with, ShiftSign};
use knotquat::classify::{classify, ClassifiedPoint, NumMatrix, Tolerances};
use knotquat::numerics::{
    fmt_sig, ideal_residual, region_profile, round_sig, rows_to_json, sample_variety, solve_y, write_csv,
};
use knotquat::polyalg::{Ideal, DEFAULT_NAMES, TRACE_NAMES};
use knotquat::presentation::two_bridge;
use knotquat::variety::{c_ideal, ideal_to_trace_coords};
use knotquat::{parse_presentation, Error, Presentation};
use serde_json::{json, Value};

pub mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_DOMAIN, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::Syntax { .. }
            | Error::EmptyWord
            | Error::Argument(_)
            | Error::NotExpressible
            | Error::UnsupportedIdeal
            | Error::UnsupportedAlgebra(..) => EXIT_USAGE,
            Error::OffVariety(_)
            | Error::Domain(_)
            | Error::DegeneratePoint
            | Error::NotUnitNorm(_)
            | Error::ZeroAxisDirection => EXIT_DOMAIN,
            _ => EXIT_FAILURE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError { code: EXIT_FAILURE, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "knotquat", version, about = "Quaternion c-representation varieties of two-generator groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ideal of c-representations of a presentation.
    Ideal {
        #[command(flatten)]
        source: SourceArgs,
        /// Also print the ideal in the trace coordinates (x', z).
        #[arg(long)]
        trace_coords: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify a real point and build an explicit representation.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// If omitted, every real branch over x is reported.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Affine c-representation ideal in x, y, s.
    Affine {
        #[command(flatten)]
        source: SourceArgs,
        /// Use v(b) = sB⁻ − (A⁻B⁻)⁻ instead of sB⁻ + (A⁻B⁻)⁻.
        #[arg(long)]
        minus_sign: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Standard presentation of the 2-bridge knot (p, q).
    TwoBridge {
        p: u64,
        q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the real curve and its y/(1−x²) profile.
    Sample {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and check a representation at every sampled point.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Presentation, e.g. "aba=bab" or "abABa".
    #[arg(short = 'p', long = "presentation", allow_hyphen_values = true)]
    pub presentation: Option<String>,
    /// File holding a presentation as text or JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// 2-bridge knot parameters.
    #[arg(long = "two-bridge", num_args = 2, value_names = ["P", "Q"])]
    pub two_bridge: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Residual tolerance for relator and on-variety checks.
    #[arg(long, default_value_t = knotquat::classify::DEFAULT_VERIFY_TOL)]
    pub tol: f64,
    /// Width of the band treated as a region boundary.
    #[arg(long, default_value_t = knotquat::classify::DEFAULT_BOUNDARY_TOL)]
    pub boundary_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    pub step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Inline(String),
    File(PathBuf),
    TwoBridge(u64, u64),
}

/// Validated settings shared by the commands.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub source: Option<Source>,
    pub tol: Tolerances,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Config {
    pub fn new(source: Option<&SourceArgs>, tol: Option<&TolArgs>, output: &OutputArgs) -> CliResult<Config> {
        let source = source.map(Source::from_args).transpose()?;
        let tol = match tol {
            Some(t) => {
                for (name, v) in [("--tol", t.tol), ("--boundary-tol", t.boundary_tol)] {
                    if !(v > 0.0 && v.is_finite()) {
                        return Err(CliError::usage(format!("{name} must be positive, got {v}")));
                    }
                }
                Tolerances { boundary: t.boundary_tol, verify: t.tol }
            }
            None => Tolerances::default(),
        };
        Ok(Config { source, tol, format: output.format, out: output.out.clone() })
    }

    pub fn presentation(&self) -> CliResult<Presentation> {
        self.source.as_ref().ok_or_else(|| CliError::usage("no presentation given"))?.load()
    }
}

impl Source {
    fn from_args(a: &SourceArgs) -> CliResult<Source> {
        let mut found = Vec::new();
        if let Some(p) = &a.presentation {
            found.push(Source::Inline(p.clone()));
        }
        if let Some(f) = &a.file {
            found.push(Source::File(f.clone()));
        }
        if let Some(v) = &a.two_bridge {
            found.push(Source::TwoBridge(v[0], v[1]));
        }
        match found.len() {
            0 => Err(CliError::usage("give one of -p/--presentation, --file or --two-bridge P Q")),
            1 => Ok(found.remove(0)),
            _ => Err(CliError::usage("give exactly one of -p/--presentation, --file or --two-bridge")),
        }
    }

    pub fn load(&self) -> CliResult<Presentation> {
        match self {
            Source::Inline(text) => Ok(parse_presentation(text)?),
            Source::TwoBridge(p, q) => Ok(two_bridge(*p, *q)?),
            Source::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
                let trimmed = text.trim();
                if trimmed.starts_with('{') {
                    serde_json::from_str(trimmed).map_err(|e| CliError::usage(format!("bad presentation JSON: {e}")))
                } else {
                    Ok(parse_presentation(trimmed)?)
                }
            }
        }
    }
}

/// Rounds every float in a JSON value to 12 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|f| Value::from(round_sig(f))).unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(v)).expect("serializable");
    s.push('\n');
    s
}

fn ideal_strings(ideal: &Ideal, names: [&str; 3]) -> Vec<String> {
    ideal.gens().iter().map(|g| g.display_with(names).to_string()).collect()
}

/// Text shown for a possibly empty ideal.
pub fn ideal_line(label: &str, ideal: &Ideal, names: [&str; 3]) -> String {
    if ideal.is_empty() {
        format!("{label} = < > (all (x,y))")
    } else {
        format!("{label} = {}", ideal.display_with(names))
    }
}

pub fn cmd_ideal(cfg: &Config, trace_coords: bool) -> CliResult<String> {
    let p = cfg.presentation()?;
    let ci = c_ideal(&p);
    let trace = if trace_coords { Some(ideal_to_trace_coords(&ci.simplified)?) } else { None };
    match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(&ci).expect("serializable");
            v["raw_text"] = json!(ci.raw.iter().map(|g| g.to_string()).collect::<Vec<_>>());
            v["ideal_text"] = json!(ideal_strings(&ci.simplified, DEFAULT_NAMES));
            if let Some(t) = &trace {
                v["trace_ideal"] = json!(t);
                v["trace_ideal_text"] = json!(ideal_strings(t, TRACE_NAMES));
            }
            Ok(json_text(v))
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            writeln!(s, "presentation: {p}").ok();
            let raw: Vec<String> = ci.raw.iter().map(|g| g.to_string()).collect();
            writeln!(s, "raw: ({})", raw.join(", ")).ok();
            writeln!(s, "{}", ideal_line("I", &ci.simplified, DEFAULT_NAMES)).ok();
            if let Some(t) = &trace {
                writeln!(s, "{}", ideal_line("I(x', z)", t, TRACE_NAMES)).ok();
            }
            for w in &ci.warnings {
                writeln!(s, "warning: {w}").ok();
            }
            Ok(s)
        }
    }
}

fn fmt_complex(c: num_complex::Complex64) -> String {
    if c.im == 0.0 || round_sig(c.im) == 0.0 {
        fmt_sig(c.re)
    } else if round_sig(c.re) == 0.0 {
        format!("{}i", fmt_sig(c.im))
    } else if c.im < 0.0 {
        format!("{}-{}i", fmt_sig(c.re), fmt_sig(-c.im))
    } else {
        format!("{}+{}i", fmt_sig(c.re), fmt_sig(c.im))
    }
}

fn fmt_row(row: &[num_complex::Complex64]) -> String {
    format!("[{}]", row.iter().map(|&c| fmt_complex(c)).collect::<Vec<_>>().join(", "))
}

fn fmt_matrix<const N: usize>(m: &NumMatrix<N>) -> String {
    format!("[{}]", m.m.iter().map(|r| fmt_row(r)).collect::<Vec<_>>().join(", "))
}

/// Human-readable report of one classified point.
pub fn classified_text(cp: &ClassifiedPoint) -> String {
    let mut s = String::new();
    writeln!(s, "point: (x, y) = ({}, {})", fmt_sig(cp.x), fmt_sig(cp.y)).ok();
    writeln!(s, "region: {} ({})", cp.region.label(), cp.region.name()).ok();
    if let Some(c) = &cp.construction {
        writeln!(s, "algebra: ({}, {})", c.params.mu, c.params.nu).ok();
        writeln!(s, "field: {}", c.field_desc).ok();
        writeln!(s, "A = {}", fmt_row(&c.a.c)).ok();
        writeln!(s, "B = {}", fmt_row(&c.b.c)).ok();
        if let Some((a2, b2)) = cp.mat2() {
            writeln!(s, "mat2(A) = {}", fmt_matrix(&a2)).ok();
            writeln!(s, "mat2(B) = {}", fmt_matrix(&b2)).ok();
        }
        if let Some((a3, b3)) = cp.mat3() {
            writeln!(s, "mat3(A) = {}", fmt_matrix(&a3)).ok();
            writeln!(s, "mat3(B) = {}", fmt_matrix(&b3)).ok();
        }
    } else {
        writeln!(s, "no irreducible or almost-irreducible representation at (±1, 0)").ok();
    }
    if let Some(inv) = &cp.invariant {
        let kind = serde_json::to_value(inv.kind).expect("serializable");
        writeln!(s, "invariant: {} = {} (angle {})", kind.as_str().unwrap_or(""), fmt_sig(inv.value), fmt_sig(inv.angle))
            .ok();
    }
    let red = serde_json::to_value(cp.reducibility).expect("serializable");
    writeln!(s, "reducibility: {}", red.as_str().unwrap_or("")).ok();
    if let Some(r) = cp.residual {
        writeln!(s, "residual: {:.3e}", r).ok();
    }
    s
}

/// Classified points over `x` (every branch) or at `(x, y)`.
pub fn classify_points(p: &Presentation, x: f64, y: Option<f64>, tol: Tolerances) -> CliResult<Vec<ClassifiedPoint>> {
    let ideal = c_ideal(p).simplified;
    let ys = match y {
        Some(y) => {
            if !ideal.is_empty() {
                let r = ideal_residual(&ideal, x, y)?;
                if r > tol.verify {
                    return Err(Error::OffVariety(r).into());
                }
            }
            vec![y]
        }
        None => {
            if ideal.is_empty() {
                return Err(CliError::usage("every (x, y) lies on the variety; give --y"));
            }
            solve_y(&ideal, x, tol.verify)?
        }
    };
    ys.into_iter().map(|y| Ok(classify(x, y, Some(p), tol)?)).collect()
}

pub fn cmd_classify(cfg: &Config, x: f64, y: Option<f64>) -> CliResult<String> {
    let p = cfg.presentation()?;
    let points = classify_points(&p, x, y, cfg.tol)?;
    let bad: Vec<&ClassifiedPoint> =
        points.iter().filter(|cp| cp.residual.is_some_and(|r| !(r < cfg.tol.verify))).collect();
    let body = match cfg.format {
        Format::Json => json_text(serde_json::to_value(&points).expect("serializable")),
        Format::Text | Format::Csv => {
            if points.is_empty() {
                format!("no real points of the variety over x = {}\n", fmt_sig(x))
            } else {
                points.iter().map(classified_text).collect::<Vec<_>>().join("\n")
            }
        }
    };
    if let Some(cp) = bad.first() {
        return Err(CliError::domain(format!(
            "{body}relator residual {:.3e} exceeds tolerance at ({}, {})",
            cp.residual.unwrap_or(f64::NAN),
            fmt_sig(cp.x),
            fmt_sig(cp.y)
        )));
    }
    Ok(body)
}

pub fn cmd_affine(cfg: &Config, minus_sign: bool) -> CliResult<String> {
    let p = cfg.presentation()?;
    let sign = if minus_sign { ShiftSign::Minus } else { ShiftSign::Plus };
    let ai = affine_ideal_with(&p, sign);
    match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(&ai).expect("serializable");
            v["p_text"] = json!(ideal_strings(&ai.p_gens, DEFAULT_NAMES));
            v["q_text"] = json!(ai.q_gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
            v["groebner_text"] = json!(ideal_strings(&ai.groebner, DEFAULT_NAMES));
            Ok(json_text(v))
        }
        Format::Text | Format::Csv => {
            let list = |gens: Vec<String>| if gens.is_empty() { "< >".to_string() } else { format!("< {} >", gens.join(", ")) };
            let mut s = String::new();
            writeln!(s, "presentation: {p}").ok();
            writeln!(s, "p: {}", list(ideal_strings(&ai.p_gens, DEFAULT_NAMES))).ok();
            writeln!(s, "q: {}", list(ai.q_gens.iter().map(|g| g.to_string()).collect())).ok();
            writeln!(s, "groebner: {}", list(ideal_strings(&ai.groebner, DEFAULT_NAMES))).ok();
            Ok(s)
        }
    }
}

pub fn cmd_two_bridge(cfg: &Config, p: u64, q: u64) -> CliResult<String> {
    let pres = two_bridge(p, q)?;
    match cfg.format {
        Format::Json => Ok(json_text(serde_json::to_value(&pres).expect("serializable"))),
        Format::Text | Format::Csv => Ok(format!("{pres}\n")),
    }
}

fn check_grid(g: &GridArgs) -> CliResult<()> {
    if !(g.step > 0.0) || !g.step.is_finite() {
        return Err(CliError::usage(format!("--step must be positive, got {}", g.step)));
    }
    if g.x_min > g.x_max {
        return Err(CliError::usage(format!("--x-min {} exceeds --x-max {}", g.x_min, g.x_max)));
    }
    Ok(())
}

pub fn cmd_sample(cfg: &Config, grid: &GridArgs) -> CliResult<String> {
    check_grid(grid)?;
    let p = cfg.presentation()?;
    let ideal = c_ideal(&p).simplified;
    let samples = sample_variety(&ideal, grid.x_min, grid.x_max, grid.step, 1e-9)?;
    let rows = region_profile(&samples);
    match cfg.format {
        Format::Json => Ok(json_text(rows_to_json(&rows))),
        Format::Csv | Format::Text => {
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            Ok(String::from_utf8(buf).expect("ascii"))
        }
    }
}

pub fn cmd_verify(cfg: &Config, grid: &GridArgs) -> CliResult<String> {
    check_grid(grid)?;
    let p = cfg.presentation()?;
    let report = verify::sweep(&p, grid.x_min, grid.x_max, grid.step, cfg.tol)?;
    let body = match cfg.format {
        Format::Json => json_text(serde_json::to_value(&report).expect("serializable")),
        Format::Text | Format::Csv => report.to_text(),
    };
    if report.passed() {
        Ok(body)
    } else {
        Err(CliError::domain(format!("{body}verification failed")))
    }
}

/// Runs a parsed command, returning its output text.
pub fn execute(cli: &Cli) -> CliResult<(String, Option<PathBuf>)> {
    let (text, cfg) = match &cli.command {
        Command::Ideal { source, trace_coords, output } => {
            let cfg = Config::new(Some(source), None, output)?;
            (cmd_ideal(&cfg, *trace_coords)?, cfg)
        }
        Command::Classify { source, x, y, tol, output } => {
            let cfg = Config::new(Some(source), Some(tol), output)?;
            (cmd_classify(&cfg, *x, *y)?, cfg)
        }
        Command::Affine { source, minus_sign, output } => {
            let cfg = Config::new(Some(source), None, output)?;
            (cmd_affine(&cfg, *minus_sign)?, cfg)
        }
        Command::TwoBridge { p, q, output } => {
            let cfg = Config::new(None, None, output)?;
            (cmd_two_bridge(&cfg, *p, *q)?, cfg)
        }
        Command::Sample { source, grid, output } => {
            let cfg = Config::new(Some(source), None, output)?;
            (cmd_sample(&cfg, grid)?, cfg)
        }
        Command::Verify { source, grid, tol, output } => {
            let cfg = Config::new(Some(source), Some(tol), output)?;
            (cmd_verify(&cfg, grid)?, cfg)
        }
    };
    Ok((text, cfg.out))
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, None)) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_FAILURE
            }
        },
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                EXIT_FAILURE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
