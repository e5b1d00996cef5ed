//! Golden cases and the driver that recomputes them.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::groebner::{buchberger, saturate, GbOptions, GbStats, GroebnerBasis};
use crate::hilbert::{hilbert_numerator, HilbertSeries, IntPoly};
use crate::pfaffian::jet_generators;
use crate::polyring::Field;

use super::CliError;

const CASES_JSON: &str = include_str!("../../data/golden_cases.json");

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Expectation {
    Codim { value: usize, source: String },
    Dimension { value: usize, source: String },
    Numerator { value: Vec<i64>, source: String },
    Multiplicity { value: u64, source: String },
    NumeratorPower { base: String, power: u32, source: String },
    MultiplicityPower { base: String, power: u32, source: String },
    Symmetric { value: bool, source: String },
    Positive { value: bool, source: String },
}

impl Expectation {
    pub fn source(&self) -> &str {
        match self {
            Expectation::Codim { source, .. }
            | Expectation::Dimension { source, .. }
            | Expectation::Numerator { source, .. }
            | Expectation::Multiplicity { source, .. }
            | Expectation::NumeratorPower { source, .. }
            | Expectation::MultiplicityPower { source, .. }
            | Expectation::Symmetric { source, .. }
            | Expectation::Positive { source, .. } => source,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Expectation::Codim { .. } => "codim",
            Expectation::Dimension { .. } => "dimension",
            Expectation::Numerator { .. } => "numerator",
            Expectation::Multiplicity { .. } => "multiplicity",
            Expectation::NumeratorPower { .. } => "numerator_power",
            Expectation::MultiplicityPower { .. } => "multiplicity_power",
            Expectation::Symmetric { .. } => "symmetric",
            Expectation::Positive { .. } => "positive",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Jet,
    Saturation,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct GoldenCase {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub kind: CaseKind,
    #[serde(default)]
    pub by: Option<[usize; 3]>,
    pub expect: Vec<Expectation>,
}

#[derive(Deserialize)]
struct Corpus {
    cases: Vec<GoldenCase>,
}

/// The registered cases, in file order.
pub fn golden_cases() -> Vec<GoldenCase> {
    serde_json::from_str::<Corpus>(CASES_JSON)
        .expect("embedded case file parses")
        .cases
}

pub fn find_case(id: &str) -> Result<GoldenCase, CliError> {
    golden_cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CliError::Usage(format!("unknown case `{id}`")))
}

/// Gröbner basis behind a case: the jet ideal, or its saturation.
pub fn case_basis<F: Field>(case: &GoldenCase, field: F, opts: &GbOptions) -> Result<GroebnerBasis<F>, CliError> {
    let ideal = jet_generators(case.n, case.k, case.r, field)?;
    let ring = ideal.ring().clone();
    Ok(match case.kind {
        CaseKind::Jet => buchberger(&ring, &ideal.polys(), opts)?,
        CaseKind::Saturation => {
            let [i, j, h] = case
                .by
                .ok_or_else(|| CliError::Format(format!("case {} lacks `by`", case.id)))?;
            let f = ring.variable(crate::polyring::VarId::jet(i, j, h))?;
            saturate(&ring, &ideal.polys(), &f, opts)?
        }
    })
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub field: String,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    pub wall_time: f64,
    pub stats: Option<GbStats>,
    pub message: Option<String>,
}

fn coeffs_json(p: &IntPoly) -> Value {
    json!(p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn big_json(b: &BigInt) -> Value {
    json!(b.to_string())
}

struct Runner<F: Field> {
    field: F,
    opts: GbOptions,
    cache: HashMap<String, (HilbertSeries, GbStats)>,
}

impl<F: Field> Runner<F> {
    fn series(&mut self, id: &str) -> Result<(HilbertSeries, GbStats), CliError> {
        if let Some(hit) = self.cache.get(id) {
            return Ok(hit.clone());
        }
        let case = find_case(id)?;
        let gb = case_basis(&case, self.field.clone(), &self.opts)?;
        let series = hilbert_numerator(&gb.initial_ideal()).reduced();
        let out = (series, gb.stats().clone());
        self.cache.insert(id.to_string(), out.clone());
        Ok(out)
    }
}

fn check<F: Field>(runner: &mut Runner<F>, h: &HilbertSeries, e: &Expectation) -> Result<CheckReport, CliError> {
    let (expected, computed, pass) = match e {
        Expectation::Codim { value, .. } => {
            let c = h.codimension()?;
            (json!(value), json!(c), c == *value)
        }
        Expectation::Dimension { value, .. } => {
            let d = h.dimension()?;
            (json!(value), json!(d), d == *value)
        }
        Expectation::Numerator { value, .. } => {
            let want = IntPoly::from_i64s(value);
            (coeffs_json(&want), coeffs_json(&h.numerator), h.numerator == want)
        }
        Expectation::Multiplicity { value, .. } => {
            let m = h.multiplicity()?;
            (json!(value.to_string()), big_json(&m), m == BigInt::from(*value))
        }
        Expectation::NumeratorPower { base, power, .. } => {
            let (b, _) = runner.series(base)?;
            let want = b.numerator.pow(*power);
            (coeffs_json(&want), coeffs_json(&h.numerator), h.numerator == want)
        }
        Expectation::MultiplicityPower { base, power, .. } => {
            let (b, _) = runner.series(base)?;
            let want = b.multiplicity()?.pow(*power);
            let m = h.multiplicity()?;
            (big_json(&want), big_json(&m), m == want)
        }
        Expectation::Symmetric { value, .. } => {
            let s = h.numerator.is_palindromic();
            (json!(value), json!(s), s == *value)
        }
        Expectation::Positive { value, .. } => {
            let s = h.numerator.all_positive();
            (json!(value), json!(s), s == *value)
        }
    };
    Ok(CheckReport {
        check: e.name().to_string(),
        expected,
        computed,
        pass,
        source: e.source().to_string(),
    })
}

/// Recomputes one case. Budget exhaustion yields `Inconclusive`.
pub fn verify_case<F: Field>(id: &str, field: F, opts: &GbOptions) -> Result<CaseReport, CliError> {
    let case = find_case(id)?;
    let tag = field.tag().to_string();
    let start = Instant::now();
    let mut runner = Runner {
        field,
        opts: opts.clone(),
        cache: HashMap::new(),
    };
    let outcome = runner.series(id).and_then(|(h, stats)| {
        let checks = case
            .expect
            .iter()
            .map(|e| check(&mut runner, &h, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((checks, stats))
    });
    let wall_time = start.elapsed().as_secs_f64();
    match outcome {
        Ok((checks, stats)) => Ok(CaseReport {
            id: case.id,
            field: tag,
            status: if checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail },
            checks,
            wall_time,
            stats: Some(stats),
            message: None,
        }),
        Err(CliError::Gb(e)) if e.is_resource_limit() => Ok(CaseReport {
            id: case.id,
            field: tag,
            status: Status::Inconclusive,
            checks: Vec::new(),
            wall_time,
            stats: None,
            message: Some(e.to_string()),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_well_formed() {
        let cases = golden_cases();
        let ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        for want in ["I_2^{5,3}", "I_2^{6,2}", "sat_6_2"] {
            assert!(ids.contains(&want));
        }
        for c in &cases {
            assert!(!c.expect.is_empty());
            for e in &c.expect {
                assert!(e.source().len() > 10, "{}: empty provenance", c.id);
                if let Expectation::NumeratorPower { base, .. } | Expectation::MultiplicityPower { base, .. } = e {
                    assert!(ids.contains(&base.as_str()));
                }
            }
            assert_eq!(c.kind == CaseKind::Saturation, c.by.is_some());
        }
    }
}
