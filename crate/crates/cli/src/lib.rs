//! Command-line front end for `ratcrit`: JSON function documents in, plain
//! text, CSV and JSON out.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ratcrit::verify::Summary;
use ratcrit::{
    alexander_walsh_radius, corollary1_max_rho, critical_points, exclusion_radius, run_suite,
    theorem2_k, theorem3_l, theorem4_threshold, Complex64, EnsembleConfig, ModelError,
    RationalFunction, SuiteParams, TheoremId, TrialRecord, VerificationReport, WeightedPoint,
};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("points[{index}].mult: multiplicity must be nonzero")]
    ZeroMultiplicity { index: usize },
    #[error("points[{index}]: location ({re}, {im}) repeats points[{first}]")]
    Duplicate {
        index: usize,
        first: usize,
        re: f64,
        im: f64,
    },
    #[error("points[{index}]: {source}")]
    Invalid { index: usize, source: ModelError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    re: f64,
    im: f64,
    mult: i32,
}

/// On-disk form of a rational function: `{"points": [{"re", "im", "mult"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDocument {
    points: Vec<PointEntry>,
}

pub fn parse_function_document(text: &str) -> Result<RationalFunction, DocumentError> {
    let doc: FunctionDocument =
        serde_json::from_str(text).map_err(|e| DocumentError::Malformed {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    let mut points = Vec::with_capacity(doc.points.len());
    for (index, p) in doc.points.iter().enumerate() {
        if p.mult == 0 {
            return Err(DocumentError::ZeroMultiplicity { index });
        }
        if let Some(first) = doc.points[..index]
            .iter()
            .position(|q| q.re == p.re && q.im == p.im)
        {
            return Err(DocumentError::Duplicate {
                index,
                first,
                re: p.re,
                im: p.im,
            });
        }
        let point = WeightedPoint::new(Complex64::new(p.re, p.im), p.mult)
            .map_err(|source| DocumentError::Invalid { index, source })?;
        points.push(point);
    }
    RationalFunction::new(points).map_err(|source| DocumentError::Invalid { index: 0, source })
}

pub fn serialize_function(f: &RationalFunction) -> String {
    let doc = FunctionDocument {
        points: f
            .points()
            .iter()
            .map(|p| PointEntry {
                re: p.location.re,
                im: p.location.im,
                mult: p.multiplicity,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("documents of finite reals always serialize")
}

/// Seventeen significant digits: enough to round-trip any `f64`.
pub struct Real(pub f64);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

struct Point(Complex64);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", Real(self.0.re), Real(self.0.im))
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    trial_index: usize,
    inputs_digest: &'a str,
    computed_constant: String,
    oracle_count: usize,
    min_margin: String,
    status: &'static str,
}

pub fn write_report_csv<W: Write>(report: &VerificationReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &report.records {
        w.serialize(CsvRow {
            trial_index: r.trial_index,
            inputs_digest: &r.inputs_digest,
            computed_constant: Real(r.computed_constant).to_string(),
            oracle_count: r.oracle_count,
            min_margin: Real(r.margin).to_string(),
            status: r.status.as_str(),
        })?;
    }
    if report.records.is_empty() {
        w.write_record([
            "trial_index",
            "inputs_digest",
            "computed_constant",
            "oracle_count",
            "min_margin",
            "status",
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn json_real(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::json!(x.to_string())
    }
}

fn record_json(r: &TrialRecord) -> serde_json::Value {
    serde_json::json!({
        "trial_index": r.trial_index,
        "inputs_digest": r.inputs_digest,
        "computed_constant": json_real(r.computed_constant),
        "oracle_count": r.oracle_count,
        "min_margin": json_real(r.margin),
        "status": r.status.as_str(),
    })
}

fn summary_json(theorem: TheoremId, s: &Summary) -> serde_json::Value {
    serde_json::json!({
        "theorem": theorem.as_str(),
        "trials": s.trials,
        "passed": s.passed,
        "failures": s.failures,
        "skipped": s.skipped,
        "inconclusive": s.inconclusive,
        "min_margin": json_real(s.min_margin),
    })
}

pub fn report_json(report: &VerificationReport) -> serde_json::Value {
    serde_json::json!({
        "trials": report.records.iter().map(record_json).collect::<Vec<_>>(),
        "summary": summary_json(report.theorem, &report.summary),
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "ratcrit",
    version,
    about = "Zeros, poles and critical points of rational functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Oracle critical points with multiplicities and residuals.
    CriticalPoints {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exclusion radius about a zero or pole, against Alexander-Walsh.
    Exclusion {
        file: PathBuf,
        #[arg(long, value_parser = parse_point)]
        at: Complex64,
    },
    /// Largest admissible rho_h(z0) for a factor (z - z0)^k.
    Corollary1 {
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        #[arg(long = "R")]
        r: f64,
    },
    /// Distant-perturbation constant K for g.
    Thm2K {
        file: PathBuf,
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Polynomial-case constant L.
    Thm3L {
        #[arg(long)]
        n: u32,
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Power threshold n for g h^n.
    Thm4N {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// |f'/f| on a square grid, as CSV.
    PlotData {
        file: PathBuf,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Half-width of the square about the centroid of the locations.
        #[arg(long)]
        extent: Option<f64>,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_theorem)]
    theorem: TheoremId,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long = "R")]
    r: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// CSV report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected `re,im`")?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|e| format!("imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse()
}

fn load(path: &Path) -> anyhow::Result<RationalFunction> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_function_document(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Runs one invocation and returns its exit code: 0 on success, 1 when a
/// verification trial fails, 2 on usage, input or evaluation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::CriticalPoints { file, tol } => {
            let f = load(&file)?;
            if f.is_empty() {
                anyhow::bail!("a constant function has no critical points to compute");
            }
            let found = critical_points(&f, tol)?;
            writeln!(out, "re,im,multiplicity,residual")?;
            for (&(z, m), &res) in found.roots.iter().zip(&found.residuals) {
                writeln!(out, "{},{m},{}", Point(z), Real(res))?;
            }
            writeln!(
                out,
                "# deficiency_at_infinity {}",
                found.deficiency_at_infinity
            )?;
        }
        Command::Exclusion { file, at } => {
            let f = load(&file)?;
            let ours = exclusion_radius(&f, at)?;
            let classical = alexander_walsh_radius(&f, at)?;
            writeln!(out, "d_f {}", Real(f.min_distance(at)))?;
            writeln!(out, "rho_f {}", Real(f.rho(at)))?;
            writeln!(out, "radius {}", Real(ours))?;
            writeln!(out, "alexander_walsh {}", Real(classical))?;
            writeln!(out, "improvement {}", Real(ours / classical))?;
        }
        Command::Corollary1 { k, r } => {
            writeln!(out, "max_rho {}", Real(corollary1_max_rho(k, r)?))?;
        }
        Command::Thm2K {
            file,
            r,
            eps,
            samples,
        } => {
            let g = load(&file)?;
            let t = theorem2_k(&g, r, eps, samples)?;
            writeln!(out, "K {}", Real(t.k))?;
            writeln!(out, "circle_min {}", Real(t.circle_min.value))?;
            writeln!(out, "circle_min_sampled {}", Real(t.circle_min.sampled))?;
            writeln!(
                out,
                "lipschitz_bound {}",
                Real(t.circle_min.lipschitz_bound)
            )?;
            writeln!(out, "samples_per_circle {}", t.circle_min.sample_count)?;
            writeln!(out, "cap {}", Real(t.cap))?;
            writeln!(out, "circles {}", t.centers.len() + 1)?;
        }
        Command::Thm3L { n, r, eps } => {
            writeln!(out, "L {}", Real(theorem3_l(n, r, eps)?))?;
        }
        Command::Thm4N { g, h, eps, samples } => {
            let (g, h) = (load(&g)?, load(&h)?);
            let t = theorem4_threshold(&g, &h, eps, samples)?;
            writeln!(out, "M {}", Real(t.max_g.value))?;
            writeln!(out, "m {}", Real(t.min_h.value))?;
            writeln!(out, "n {}", t.n)?;
        }
        Command::Verify(args) => return verify(args, out, err),
        Command::PlotData { file, grid, extent } => plot_data(&load(&file)?, grid, extent, out)?,
    }
    Ok(0)
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let mut cfg = EnsembleConfig::for_suite(args.theorem);
    cfg.seed = args.seed;
    if let Some(trials) = args.trials {
        cfg.trials = trials as usize;
    }
    let params = SuiteParams {
        tol: args.tol,
        r: args.r,
        eps: args.eps,
        eps_factor: None,
        samples: args.samples,
    };
    let report = run_suite(args.theorem, &cfg, &params)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_report_csv(&report, std::io::BufWriter::new(file))?;
        }
        None => write_report_csv(&report, &mut *out)?,
    }
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report_json(&report))?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let s = &report.summary;
    writeln!(
        err,
        "{}: {} trials, {} passed, {} failed, {} skipped, {} inconclusive, min margin {}",
        report.theorem,
        s.trials,
        s.passed,
        s.failures,
        s.skipped,
        s.inconclusive,
        Real(s.min_margin)
    )?;
    for r in report
        .records
        .iter()
        .filter(|r| r.status == ratcrit::TrialStatus::Fail)
    {
        writeln!(
            err,
            "trial {} ({}) failed: {}",
            r.trial_index, r.inputs_digest, r.note
        )?;
    }
    Ok(exit_code(&report))
}

/// 1 when any trial failed, else 0. Skipped and inconclusive trials are
/// reported but do not fail the run.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.all_passed() {
        0
    } else {
        1
    }
}

fn plot_data(
    f: &RationalFunction,
    grid: usize,
    extent: Option<f64>,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    if grid < 2 {
        anyhow::bail!("grid must be at least 2");
    }
    let n = f.distinct_count().max(1) as f64;
    let center = f.locations().sum::<Complex64>() / n;
    let half = match extent {
        Some(e) if e > 0.0 && e.is_finite() => e,
        Some(e) => anyhow::bail!("extent must be positive, got {e}"),
        None => {
            f.locations()
                .map(|w| (w - center).norm())
                .fold(1.0, f64::max)
                * 1.5
        }
    };
    writeln!(out, "re,im,abs_log_derivative")?;
    let step = 2.0 * half / (grid - 1) as f64;
    for i in 0..grid {
        for j in 0..grid {
            let z = center + Complex64::new(-half + step * j as f64, -half + step * i as f64);
            let value = f
                .log_derivative_at(z)
                .map(|v| v.norm())
                .unwrap_or(f64::INFINITY);
            writeln!(out, "{},{}", Point(z), Real(value))?;
        }
    }
    Ok(())
}
