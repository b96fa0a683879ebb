//! Named verification suites with seeded trials and versioned reports.

mod fixtures;
mod sample;
mod suites;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value as Json;
use thiserror::Error;

use crate::linalg::RMatrix;
use crate::ring::{Ring, RingError};

pub use fixtures::{default_fixture_dir, fixture_hash, FixtureOutcome, FixtureStore, FIXTURES_ENV};
pub use sample::Sampler;

pub const SCHEMA_VERSION: u32 = 1;

/// Counterexamples kept in a report; the total is recorded separately.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    SuslinBasic,
    DetExponent,
    Fundamental,
    Lemma31,
    Lemma32,
    Cor33,
    Cor34,
    Cor33Fixtures,
    Prop35Coverage,
    Lemma41,
    Lemma42,
    Lemma44,
    Lemma01Completion,
    Lemma03Identity,
    Excision,
    Orbit,
}

impl SuiteName {
    pub const ALL: [SuiteName; 16] = [
        SuiteName::SuslinBasic,
        SuiteName::DetExponent,
        SuiteName::Fundamental,
        SuiteName::Lemma31,
        SuiteName::Lemma32,
        SuiteName::Cor33,
        SuiteName::Cor34,
        SuiteName::Cor33Fixtures,
        SuiteName::Prop35Coverage,
        SuiteName::Lemma41,
        SuiteName::Lemma42,
        SuiteName::Lemma44,
        SuiteName::Lemma01Completion,
        SuiteName::Lemma03Identity,
        SuiteName::Excision,
        SuiteName::Orbit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::SuslinBasic => "suslin-basic",
            SuiteName::DetExponent => "det-exponent",
            SuiteName::Fundamental => "fundamental",
            SuiteName::Lemma31 => "lemma31",
            SuiteName::Lemma32 => "lemma32",
            SuiteName::Cor33 => "cor33",
            SuiteName::Cor34 => "cor34",
            SuiteName::Cor33Fixtures => "cor33-fixtures",
            SuiteName::Prop35Coverage => "prop35-coverage",
            SuiteName::Lemma41 => "lemma41",
            SuiteName::Lemma42 => "lemma42",
            SuiteName::Lemma44 => "lemma44",
            SuiteName::Lemma01Completion => "lemma01-completion",
            SuiteName::Lemma03Identity => "lemma03-identity",
            SuiteName::Excision => "excision",
            SuiteName::Orbit => "orbit",
        }
    }

    /// Whether the suite proves identities over polynomial rings (`r ≤ 3`)
    /// rather than sampling a numeric ring (`r ≤ 4`).
    pub fn is_symbolic(self) -> bool {
        !matches!(
            self,
            SuiteName::Lemma01Completion | SuiteName::Lemma03Identity | SuiteName::Excision | SuiteName::Orbit
        )
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<SuiteName, HarnessError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// What to run: a suite at a given `r`, with an optional ring override.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub name: SuiteName,
    pub r: usize,
    /// Ring spec; `None` picks the suite's default.
    pub ring: Option<String>,
    pub seed: u64,
    /// Number of random trials; `None` picks the suite's default.
    pub trials: Option<u64>,
}

impl SuiteSpec {
    pub fn new(name: SuiteName, r: usize) -> SuiteSpec {
        SuiteSpec { name, r, ring: None, seed: 0, trials: None }
    }

    pub fn with_ring(mut self, ring: &str) -> SuiteSpec {
        self.ring = Some(ring.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> SuiteSpec {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> SuiteSpec {
        self.trials = Some(trials);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unsupported => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: String,
    pub lhs: Json,
    pub rhs: Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub r: usize,
    pub ring: String,
    pub seed: u64,
    pub trials: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks_run: u64,
    pub counterexamples: Vec<Counterexample>,
    pub observations: BTreeMap<String, Json>,
    pub fixture_hashes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// One comparison made by a suite.
#[derive(Clone, Debug)]
pub(crate) struct Check {
    inputs: String,
    passed: bool,
    lhs: Json,
    rhs: Json,
}

impl Check {
    pub(crate) fn matrices(inputs: impl Into<String>, lhs: &RMatrix, rhs: &RMatrix) -> Check {
        let passed = lhs == rhs;
        let (lhs, rhs) = if passed { (Json::Null, Json::Null) } else { (lhs.to_json(), rhs.to_json()) };
        Check { inputs: inputs.into(), passed, lhs, rhs }
    }

    pub(crate) fn truth(inputs: impl Into<String>, passed: bool, lhs: impl FnOnce() -> Json, rhs: Json) -> Check {
        let lhs = if passed { Json::Null } else { lhs() };
        Check { inputs: inputs.into(), passed, lhs, rhs: if passed { Json::Null } else { rhs } }
    }

    pub(crate) fn flag(inputs: impl Into<String>, passed: bool) -> Check {
        Check::truth(inputs, passed, || Json::Bool(false), Json::Bool(true))
    }

    /// An error raised while evaluating is a failed check.
    pub(crate) fn or_error<E: fmt::Display>(inputs: impl Into<String>, r: Result<Check, E>) -> Check {
        let inputs = inputs.into();
        r.unwrap_or_else(|e| Check {
            inputs,
            passed: false,
            lhs: serde_json::json!({ "error": e.to_string() }),
            rhs: Json::Null,
        })
    }
}

/// A suite that cannot run for the requested ring or `r`.
#[derive(Debug)]
pub(crate) struct Unsupported(pub String);

/// Mutable state of one suite run.
pub(crate) struct Ctx {
    pub spec: SuiteSpec,
    pub store: FixtureStore,
    pub ring_label: String,
    pub trials: u64,
    checks_run: u64,
    failed: u64,
    counterexamples: Vec<Counterexample>,
    observations: BTreeMap<String, Json>,
    fixture_hashes: Vec<String>,
}

impl Ctx {
    pub(crate) fn record(&mut self, check: Check) {
        self.checks_run += 1;
        if !check.passed {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample { inputs: check.inputs, lhs: check.lhs, rhs: check.rhs });
            }
        }
    }

    pub(crate) fn record_all(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.record(c);
        }
    }

    pub(crate) fn observe(&mut self, key: impl Into<String>, value: impl Into<Json>) {
        self.observations.insert(key.into(), value.into());
    }

    /// Runs `trial(index, sampler)` for each index in parallel, keeping trial order.
    pub(crate) fn run_trials<F>(&mut self, stream_base: u64, count: u64, trial: F)
    where
        F: Fn(u64, &mut Sampler) -> Vec<Check> + Sync,
    {
        let seed = self.spec.seed;
        let results: Vec<Vec<Check>> = (0..count)
            .into_par_iter()
            .map(|t| trial(t, &mut Sampler::new(seed, stream_base + t)))
            .collect();
        self.record_all(results.into_iter().flatten());
    }

    /// Pins `value` under `key`; a mismatch with the stored snapshot fails.
    pub(crate) fn pin(&mut self, key: &str, value: Json) {
        let hash = fixture_hash(&value);
        let check = match self.store.check(key, &value) {
            Ok(FixtureOutcome::Created | FixtureOutcome::Matched) => Check::flag(key, true),
            Ok(FixtureOutcome::Mismatch { pinned }) => Check::truth(key, false, || value.clone(), pinned),
            Err(e) => Check::truth(key, false, || serde_json::json!({ "error": e.to_string() }), Json::Null),
        };
        self.record(check);
        self.fixture_hashes.push(format!("{key}:{hash}"));
    }
}

/// Runs one suite with fixtures from [`default_fixture_dir`].
pub fn run_suite(spec: &SuiteSpec) -> Result<Report, HarnessError> {
    run_suite_with(spec, &FixtureStore::new(default_fixture_dir()))
}

pub fn run_suite_with(spec: &SuiteSpec, store: &FixtureStore) -> Result<Report, HarnessError> {
    let start = Instant::now();
    if let Some(text) = &spec.ring {
        Ring::parse(text)?;
    }
    let plan = suites::plan(spec);
    let mut ctx = Ctx {
        spec: spec.clone(),
        store: store.clone(),
        ring_label: plan.ring_label.clone(),
        trials: spec.trials.unwrap_or(plan.default_trials),
        checks_run: 0,
        failed: 0,
        counterexamples: Vec::new(),
        observations: BTreeMap::new(),
        fixture_hashes: Vec::new(),
    };
    let outcome = (plan.run)(&mut ctx);
    if ctx.failed > ctx.counterexamples.len() as u64 {
        ctx.observations.insert("counterexamples_total".into(), ctx.failed.into());
    }
    let (status, reason) = match outcome {
        Err(Unsupported(why)) => (Status::Unsupported, Some(why)),
        Ok(()) if ctx.counterexamples.is_empty() => (Status::Pass, None),
        Ok(()) => (Status::Fail, None),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        suite: spec.name.to_string(),
        r: spec.r,
        ring: ctx.ring_label,
        seed: spec.seed,
        trials: ctx.trials,
        status,
        reason,
        checks_run: ctx.checks_run,
        counterexamples: ctx.counterexamples,
        observations: ctx.observations,
        fixture_hashes: ctx.fixture_hashes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every registered suite (in parallel) and returns the reports sorted by name.
pub fn run_all(template: &SuiteSpec, store: &FixtureStore) -> Result<Vec<Report>, HarnessError> {
    let mut reports = SuiteName::ALL
        .par_iter()
        .map(|&name| run_suite_with(&SuiteSpec { name, ..template.clone() }, store))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(reports)
}

/// Worst status across reports: any failure, else any unsupported, else pass.
pub fn combined_status(reports: &[Report]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Unsupported) {
        Status::Unsupported
    } else {
        Status::Pass
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Text => text_report(report),
    }
}

pub fn emit_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Text => reports.iter().map(text_report).collect(),
    }
}

fn text_report(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<11} r={} ring={} checks={} trials={} seed={} {}ms",
        report.suite,
        report.status.as_str(),
        report.r,
        report.ring,
        report.checks_run,
        report.trials,
        report.seed,
        report.elapsed_ms
    );
    if let Some(reason) = &report.reason {
        let _ = writeln!(out, "  reason: {reason}");
    }
    for c in &report.counterexamples {
        let _ = writeln!(out, "  counterexample {}: lhs={} rhs={}", c.inputs, c.lhs, c.rhs);
    }
    for (k, v) in &report.observations {
        let _ = writeln!(out, "  {k} = {v}");
    }
    for h in &report.fixture_hashes {
        let _ = writeln!(out, "  fixture {h}");
    }
    out
}

/// The directory suites read fixtures from when none is given.
pub fn fixture_dir_or_default(dir: Option<PathBuf>) -> PathBuf {
    dir.unwrap_or_else(default_fixture_dir)
}

#[cfg(test)]
mod tests;
