//! The `pfjet` command line: argument parsing, dispatch and report rendering.

mod bench;
pub mod cases;
pub mod io;

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::formulas::{
    ci_hilbert_series, classical_hilbert_series, component_codims_r2, component_count_lower_bound, predicted_codim,
    FormulaError,
};
use crate::groebner::{buchberger, saturate, saturate_by_smallest_variable, GbError, GbOptions, GroebnerBasis, PairStrategy};
use crate::hilbert::{hilbert_numerator, HilbertError, HilbertReport};
use crate::pfaffian::{jet_generators, PfaffianError};
use crate::polyring::{parse_polynomial, Field, FieldTag, PolyError, PrimeField, Rationals};
use crate::witness::{crux2_witness, sample_rank_two_point, WitnessError, WitnessReport};

pub use bench::{run_bench, BenchReport, BenchRow};
pub use cases::{golden_cases, verify_case, CaseReport, GoldenCase, Status};
use io::{read_ideal, read_ideal_as, write_ideal, Header, IdealKind};

/// Environment variable supplying the default thread count.
pub const THREADS_ENV: &str = "PFJET_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    #[default]
    Normal,
    Fifo,
}

impl From<Strategy> for PairStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Normal => PairStrategy::Normal,
            Strategy::Fifo => PairStrategy::Fifo,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pfjet", version, about = "Jet schemes of pfaffian varieties")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every computing subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Coefficient field: `q` or `p:<prime>`.
    #[arg(long, default_value = "q")]
    pub field: FieldTag,
    /// Worker threads for Gröbner reductions.
    #[arg(long, env = THREADS_ENV, default_value_t = 1)]
    pub threads: usize,
    /// Abort when a critical pair exceeds this degree.
    #[arg(long)]
    pub degree_cap: Option<u32>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long, value_enum, default_value_t = Strategy::Normal)]
    pub strategy: Strategy,
    /// Re-check the basis with an independent S-pair test.
    #[arg(long)]
    pub verify: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldTag::Rational,
            threads: 1,
            degree_cap: None,
            timeout: None,
            strategy: Strategy::Normal,
            verify: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        if let Some(t) = self.timeout {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage("--timeout must be a positive number of seconds".into()));
            }
        }
        Ok(())
    }

    pub fn gb_options(&self) -> GbOptions {
        GbOptions {
            threads: self.threads,
            degree_cap: self.degree_cap,
            timeout: self.timeout.map(Duration::from_secs_f64),
            cancel: None,
            strategy: self.strategy.into(),
            verify: self.verify,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Params {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the jet generators of the 2r-pfaffians of an n x n matrix.
    Gen {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "q")]
        field: FieldTag,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        input: PathBuf,
        /// `paper` (degrevlex) or `elim` (needs aux variables).
        #[arg(long)]
        order: Option<String>,
        #[command(flatten)]
        config: RunConfig,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hilbert series of a generator, basis or monomial file.
    Hilbert {
        input: PathBuf,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Closed-form predictions for the given parameters.
    Predict {
        #[command(flatten)]
        params: Params,
    },
    /// Recompute the golden cases and compare.
    VerifyPaper {
        /// Case ids; all cases when omitted.
        cases: Vec<String>,
        #[command(flatten)]
        config: RunConfig,
        /// List the registered cases and exit.
        #[arg(long)]
        list: bool,
    },
    /// Saturate an ideal by a polynomial.
    Saturate {
        input: PathBuf,
        /// Polynomial to saturate by, e.g. `x[5,6,0]`; omit for the smallest variable.
        #[arg(long)]
        by: Option<String>,
        #[command(flatten)]
        config: RunConfig,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the explicit 2x2 block witness point, or a random rank-2 point.
    Witness {
        #[arg(long)]
        k: usize,
        /// Sample a random rank-2 point of this size instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the golden cases across fields and strategies.
    Bench {
        /// `paper` or `empty`.
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Per-case budget in seconds.
        #[arg(long, default_value_t = 600.0)]
        timeout: f64,
        #[arg(long, env = THREADS_ENV, default_value_t = 1)]
        threads: usize,
    },
}

/// Result of one invocation: the rendered report and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Exit code when a golden check fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit code when a case ran out of budget and nothing failed.
pub const EXIT_INCONCLUSIVE: i32 = 3;

macro_rules! with_field {
    ($tag:expr, $field:ident => $body:expr) => {
        match $tag {
            FieldTag::Rational => {
                let $field = Rationals;
                $body
            }
            FieldTag::Prime(p) => {
                let $field = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn gb_summary<F: Field>(gb: &GroebnerBasis<F>) -> Value {
    let s = gb.stats();
    json!({
        "basis_size": gb.len(),
        "max_degree": s.max_degree,
        "reductions": s.reductions,
        "wall_time": s.wall_time,
        "verified": gb.verified(),
        "stats": s,
    })
}

fn basis_header<F: Field>(src: &Header, gb: &GroebnerBasis<F>, order: &str) -> Header {
    Header {
        kind: IdealKind::Basis,
        order: Some(order.to_string()),
        field: Some(gb.ring().field().tag()),
        ..src.clone()
    }
}

fn cmd_gen<F: Field>(p: Params, field: F, output: Option<&Path>) -> Result<Value, CliError> {
    let ideal = jet_generators(p.n, p.k, p.r, field)?;
    let header = Header {
        n: p.n,
        k: p.k,
        r: Some(p.r),
        field: Some(ideal.ring().field().tag()),
        ..Header::default()
    };
    let text = write_ideal(&header, &ideal.polys());
    if let Some(path) = output {
        write_file(path, &text)?;
    }
    Ok(json!({
        "n": p.n, "k": p.k, "r": p.r,
        "generators": ideal.len(),
        "variables": ideal.ring().nvars(),
        "output": output.map(|p| p.display().to_string()),
        "text": if output.is_none() { Some(text) } else { None },
    }))
}

fn cmd_gb<F: Field>(
    text: &str,
    order: Option<&str>,
    cfg: &RunConfig,
    field: F,
    output: Option<&Path>,
) -> Result<Value, CliError> {
    let file = read_ideal_as(text, field, order)?;
    let gb = buchberger(&file.ring, &file.polys, &cfg.gb_options())?;
    let name = file.header.order.clone().unwrap_or_else(|| if file.header.aux > 0 { "elim" } else { "paper" }.into());
    if let Some(path) = output {
        write_file(path, &write_ideal(&basis_header(&file.header, &gb, &name), gb.elements()))?;
    }
    Ok(gb_summary(&gb))
}

fn cmd_hilbert<F: Field>(text: &str, cfg: &RunConfig, field: F) -> Result<Value, CliError> {
    let file = read_ideal(text, field)?;
    let ideal = match file.header.kind {
        IdealKind::Monomial | IdealKind::Basis => crate::groebner::MonomialIdeal::new(
            file.ring.nvars(),
            file.polys.iter().filter_map(|p| p.leading_monomial().cloned()).collect::<Vec<_>>(),
        ),
        IdealKind::Generators => buchberger(&file.ring, &file.polys, &cfg.gb_options())?.initial_ideal(),
    };
    let series = hilbert_numerator(&ideal);
    Ok(serde_json::to_value(HilbertReport::from_series(&series)?)?)
}

fn cmd_saturate<F: Field>(text: &str, by: Option<&str>, cfg: &RunConfig, field: F, output: Option<&Path>) -> Result<Value, CliError> {
    let file = read_ideal(text, field)?;
    let opts = cfg.gb_options();
    let gb = match by {
        Some(s) => {
            let f = parse_polynomial(&file.ring, s)?;
            saturate(&file.ring, &file.polys, &f, &opts)?
        }
        None => saturate_by_smallest_variable(&file.ring, &file.polys, &opts)?,
    };
    if let Some(path) = output {
        write_file(path, &write_ideal(&basis_header(&file.header, &gb, "paper"), gb.elements()))?;
    }
    let hilbert = HilbertReport::from_series(&hilbert_numerator(&gb.initial_ideal()))?;
    let mut summary = gb_summary(&gb);
    summary["by"] = json!(by.map_or_else(|| file.ring.var_at(file.ring.nvars() - 1).to_string(), str::to_string));
    summary["hilbert"] = serde_json::to_value(hilbert)?;
    Ok(summary)
}

fn cmd_predict(p: Params) -> Result<Value, CliError> {
    let classical = classical_hilbert_series(p.n, p.r)?;
    let ci = if p.n == 2 * p.r { Some(ci_hilbert_series(p.n, p.k)?) } else { None };
    let components = if p.r == 2 && p.n >= 6 && p.k >= 2 { Some(component_codims_r2(p.n, p.k)?) } else { None };
    let bound = component_count_lower_bound(p.n, p.k, p.r)?;
    let series_json = |h: &crate::hilbert::HilbertSeries| -> Result<Value, CliError> {
        Ok(json!({
            "numerator": h.numerator.to_string(),
            "denominator_exponent": h.denominator,
            "report": HilbertReport::from_series(h)?,
        }))
    };
    Ok(json!({
        "n": p.n, "k": p.k, "r": p.r,
        "predicted_codim": predicted_codim(p.n, p.k, p.r)?,
        "classical": series_json(&classical)?,
        "complete_intersection": ci.as_ref().map(series_json).transpose()?,
        "components": components,
        "component_count": bound,
    }))
}

fn cmd_witness(k: usize, sample: Option<usize>, seed: u64) -> Result<Value, CliError> {
    let report = match sample {
        None => WitnessReport::for_point(&crux2_witness(k, Rationals)?)?,
        Some(n) => {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let field = PrimeField::new(crate::polyring::DEFAULT_PRIME)?;
            WitnessReport::for_point(&sample_rank_two_point(n, k, field, &mut rng)?)?
        }
    };
    Ok(serde_json::to_value(report)?)
}

fn cmd_verify(ids: &[String], cfg: &RunConfig) -> Result<(Value, i32), CliError> {
    let ids: Vec<String> = if ids.is_empty() { golden_cases().into_iter().map(|c| c.id).collect() } else { ids.to_vec() };
    let opts = cfg.gb_options();
    let mut reports: Vec<CaseReport> = Vec::with_capacity(ids.len());
    for id in &ids {
        reports.push(with_field!(cfg.field, field => verify_case(id, field, &opts)?));
    }
    let code = if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    };
    Ok((json!({ "cases": reports }), code))
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut code = 0;
    let value = match &cli.command {
        Command::Gen { params, field, output } => {
            with_field!(*field, f => cmd_gen(*params, f, output.as_deref())?)
        }
        Command::Gb { input, order, config, output } => {
            config.validate()?;
            let text = read_file(input)?;
            with_field!(config.field, f => cmd_gb(&text, order.as_deref(), config, f, output.as_deref())?)
        }
        Command::Hilbert { input, config } => {
            config.validate()?;
            let text = read_file(input)?;
            with_field!(config.field, f => cmd_hilbert(&text, config, f)?)
        }
        Command::Predict { params } => cmd_predict(*params)?,
        Command::VerifyPaper { cases, config, list } => {
            config.validate()?;
            if *list {
                serde_json::to_value(golden_cases())?
            } else {
                let (v, c) = cmd_verify(cases, config)?;
                code = c;
                v
            }
        }
        Command::Saturate { input, by, config, output } => {
            config.validate()?;
            let text = read_file(input)?;
            with_field!(config.field, f => cmd_saturate(&text, by.as_deref(), config, f, output.as_deref())?)
        }
        Command::Witness { k, sample, seed } => cmd_witness(*k, *sample, *seed)?,
        Command::Bench { suite, timeout, threads } => {
            let cfg = RunConfig {
                threads: *threads,
                timeout: Some(*timeout),
                ..RunConfig::default()
            };
            cfg.validate()?;
            serde_json::to_value(run_bench(suite, &cfg)?)?
        }
    };
    let output = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value)?,
        Format::Text => render_text(&value),
    };
    Ok(Outcome { output, code })
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(|x| !x.is_object() && !x.is_array()))
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_scalar_array(val) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(val, indent + 1, out);
                    }
                    _ if key == "text" => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for line in scalar(val).lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", render_scalarish(val))),
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(is_flat_object) => {
            // Table: header from the first row's keys.
            let keys: Vec<&String> = items[0].as_object().unwrap().keys().collect();
            out.push_str(&format!("{pad}{}\n", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("\t")));
            for item in items {
                let row: Vec<String> = keys.iter().map(|k| render_scalarish(&item[k.as_str()])).collect();
                out.push_str(&format!("{pad}{}\n", row.join("\t")));
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                render_into(item, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_scalar_array(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn render_scalarish(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}

/// Plain-text rendering of a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

/// Serializes any report the same way `--format json` does.
pub fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Outcome {
        run_args(std::iter::once("pfjet").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn predict_reports_codim() {
        let out = run_ok(&["predict", "--n", "5", "--k", "3", "--r", "2"]);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["predicted_codim"], 9);
        assert_eq!(v["classical"]["numerator"], "1 + 3z + z^2");
        let v: Value = serde_json::from_str(&run_ok(&["predict", "--n", "8", "--k", "4", "--r", "2"]).output).unwrap();
        assert_eq!(v["component_count"]["lower"], 3);
    }

    #[test]
    fn bad_threads_rejected() {
        let err = run_args(["pfjet", "verify-paper", "--threads", "0"]).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        assert!(run_args(["pfjet", "frobnicate"]).is_err());
    }

    #[test]
    fn verify_single_case() {
        let out = run_ok(&["verify-paper", "R_2^{5,1}", "--field", "p:32003"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["cases"][0]["status"], "pass");
    }

    #[test]
    fn degree_cap_is_inconclusive() {
        let out = run_ok(&["verify-paper", "I_2^{6,2}", "--field", "p:32003", "--degree-cap", "3"]);
        assert_eq!(out.code, EXIT_INCONCLUSIVE);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["cases"][0]["status"], "inconclusive");
    }

    #[test]
    fn unknown_case_is_usage_error() {
        assert!(matches!(run_args(["pfjet", "verify-paper", "nope"]), Err(CliError::Usage(_))));
    }

    #[test]
    fn text_format_renders_tables() {
        let out = run_ok(&["--format", "text", "witness", "--k", "3"]);
        assert!(out.output.contains("on_variety: true"));
        assert!(out.output.contains("pfaffian: t^5"));
    }
}
