//! Timing and memory table over the golden cases.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use serde::Serialize;

use crate::groebner::{GbOptions, GroebnerBasis, PairStrategy};
use crate::polyring::{Field, PrimeField, Rationals, DEFAULT_PRIME};

use super::cases::{case_basis, golden_cases, GoldenCase};
use super::{CliError, RunConfig};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchRow {
    pub case: String,
    pub field: String,
    pub strategy: String,
    /// `ok`, `timeout` (any budget limit) or `error`.
    pub status: String,
    pub wall_time: f64,
    /// Peak resident set size while the row ran, when the platform reports it.
    pub peak_memory_kb: Option<u64>,
    pub basis_size: Option<usize>,
    pub reductions: Option<u64>,
    /// Hash of the sorted initial-ideal generators; equal digests mean equal initial ideals.
    pub initial_digest: Option<String>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Agreement {
    pub case: String,
    /// Every completed row of the case produced the same initial ideal.
    pub identical_initial_ideals: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchReport {
    pub suite: String,
    pub rows: Vec<BenchRow>,
    pub agreement: Vec<Agreement>,
}

fn suite_cases(suite: &str) -> Result<Vec<GoldenCase>, CliError> {
    match suite {
        "paper" | "golden" => Ok(golden_cases()),
        "empty" => Ok(Vec::new()),
        other => Err(CliError::Usage(format!("unknown suite `{other}` (expected paper|empty)"))),
    }
}

fn digest<F: Field>(gb: &GroebnerBasis<F>) -> String {
    let mut h = DefaultHasher::new();
    gb.initial_ideal().sorted_exponents().hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Resets the kernel's peak-RSS counter so the next reading covers one row only.
fn reset_peak() {
    let _ = std::fs::write("/proc/self/clear_refs", "5");
}

fn peak_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn bench_row<F: Field>(case: &GoldenCase, field: F, opts: &GbOptions) -> BenchRow {
    let tag = field.tag().to_string();
    reset_peak();
    let start = Instant::now();
    let result = case_basis(case, field, opts);
    let wall_time = start.elapsed().as_secs_f64();
    let mut row = BenchRow {
        case: case.id.clone(),
        field: tag,
        strategy: format!("{:?}", opts.strategy).to_lowercase(),
        status: "ok".into(),
        wall_time,
        peak_memory_kb: peak_kb(),
        basis_size: None,
        reductions: None,
        initial_digest: None,
        message: None,
    };
    match result {
        Ok(gb) => {
            row.basis_size = Some(gb.len());
            row.reductions = Some(gb.stats().reductions);
            row.initial_digest = Some(digest(&gb));
        }
        Err(CliError::Gb(e)) if e.is_resource_limit() => {
            row.status = "timeout".into();
            row.message = Some(e.to_string());
        }
        Err(e) => {
            row.status = "error".into();
            row.message = Some(e.to_string());
        }
    }
    row
}

/// Runs every case of `suite` over both fields and both pair strategies.
pub fn run_bench(suite: &str, cfg: &RunConfig) -> Result<BenchReport, CliError> {
    let cases = suite_cases(suite)?;
    let prime = PrimeField::new(DEFAULT_PRIME)?;
    let mut rows = Vec::new();
    let mut agreement = Vec::new();
    for case in &cases {
        let first = rows.len();
        for strategy in [PairStrategy::Normal, PairStrategy::Fifo] {
            let opts = GbOptions {
                strategy,
                ..cfg.gb_options()
            };
            rows.push(bench_row(case, prime, &opts));
            rows.push(bench_row(case, Rationals, &opts));
        }
        let digests: Vec<&String> = rows[first..].iter().filter_map(|r| r.initial_digest.as_ref()).collect();
        agreement.push(Agreement {
            case: case.id.clone(),
            identical_initial_ideals: digests.windows(2).all(|w| w[0] == w[1]),
        });
    }
    Ok(BenchReport {
        suite: suite.to_string(),
        rows,
        agreement,
    })
}
