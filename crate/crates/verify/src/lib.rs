//! Named verification suites over `npd-core`, with deterministic
//! JSON-lines or TSV output.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

mod suites;

pub use suites::SUITES;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

/// One verified statement. `pass` is `expected == actual` under `comparator`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check_name: String,
    pub params: BTreeMap<String, Value>,
    pub comparator: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub seed: u64,
}

impl CheckResult {
    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    /// Failed and not skipped.
    pub fn is_failure(&self) -> bool {
        !self.pass && self.skipped.is_none()
    }
}

/// Result of one check body.
#[derive(Debug, Clone)]
pub struct Outcome {
    comparator: String,
    expected: Value,
    actual: Value,
    pass: bool,
    detail: Option<Value>,
}

impl Outcome {
    /// Exact equality of serialized values.
    pub fn eq<E: Serialize, A: Serialize>(expected: E, actual: A) -> Self {
        let expected = to_value(expected);
        let actual = to_value(actual);
        Outcome {
            comparator: "eq".into(),
            pass: expected == actual,
            expected,
            actual,
            detail: None,
        }
    }

    /// `|actual - expected| <= tol`.
    pub fn within(expected: f64, actual: f64, tol: f64) -> Self {
        Outcome {
            comparator: format!("abs_diff<={tol}"),
            expected: to_value(expected),
            actual: to_value(actual),
            pass: (actual - expected).abs() <= tol,
            detail: None,
        }
    }

    /// A boolean statement; `detail` carries the evidence.
    pub fn holds(pass: bool) -> Self {
        Outcome {
            comparator: "eq".into(),
            expected: Value::Bool(true),
            actual: Value::Bool(pass),
            pass,
            detail: None,
        }
    }

    pub fn with_detail<D: Serialize>(mut self, detail: D) -> Self {
        self.detail = Some(to_value(detail));
        self
    }
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")))
}

/// Why a check body stopped early.
#[derive(Debug, Clone)]
pub enum CheckError {
    /// A size guard tripped; reported as skipped.
    Skip(String),
    Fail(String),
}

macro_rules! guard_conversions {
    ($($ty:path => $guard:pat),* $(,)?) => {
        $(impl From<$ty> for CheckError {
            fn from(e: $ty) -> Self {
                #[allow(unreachable_patterns)]
                match &e {
                    $guard => CheckError::Skip(e.to_string()),
                    _ => CheckError::Fail(e.to_string()),
                }
            }
        })*
    };
}

use npd_core::{
    characters::CharError, class_products::ProductError, cycle_stats::CycleStatsError,
    derangements::DerangementError, linear::LinearError, perm::PermError, symbols::SymbolError,
};

guard_conversions! {
    PermError => PermError::SizeGuardExceeded { .. },
    CharError => CharError::SizeGuardExceeded { .. },
    ProductError => ProductError::Perm(PermError::SizeGuardExceeded { .. }) | ProductError::Char(CharError::SizeGuardExceeded { .. }),
    CycleStatsError => CycleStatsError::Perm(PermError::SizeGuardExceeded { .. }),
    DerangementError => DerangementError::SizeGuardExceeded(_) | DerangementError::Perm(PermError::SizeGuardExceeded { .. }),
    LinearError => LinearError::SizeGuardExceeded { .. },
    SymbolError => SymbolError::SizeGuardExceeded { .. },
}

pub type CheckBody = Box<dyn FnOnce(u64) -> Result<Outcome, CheckError> + Send>;

/// A deferred check: name, parameters and body.
pub struct Job {
    name: String,
    params: BTreeMap<String, Value>,
    body: CheckBody,
}

impl Job {
    pub fn new(
        name: impl Into<String>,
        body: impl FnOnce(u64) -> Result<Outcome, CheckError> + Send + 'static,
    ) -> Self {
        Job {
            name: name.into(),
            params: BTreeMap::new(),
            body: Box::new(body),
        }
    }

    pub fn param<V: Serialize>(mut self, key: &str, v: V) -> Self {
        self.params.insert(key.to_string(), to_value(v));
        self
    }
}

/// Options shared by all suites. `None` selects each suite's default scope.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub max_n: Option<usize>,
    pub qs: Option<Vec<u64>>,
    pub seed: u64,
    pub n_range: Option<RangeInclusive<usize>>,
    pub action: Option<ActionSpec>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub timings: bool,
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        SuiteConfig {
            seed,
            ..Default::default()
        }
    }

    /// `default` intersected with `n_range` and capped by `max_n`.
    pub fn ns(&self, default: RangeInclusive<usize>) -> Vec<usize> {
        let (lo, hi) = match &self.n_range {
            Some(r) => (*r.start(), *r.end()),
            None => (*default.start(), *default.end()),
        };
        let hi = self.max_n.map_or(hi, |m| hi.min(m));
        (lo..=hi).collect()
    }

    /// Whether `n` is in scope given only `max_n` and `n_range`.
    pub fn admits(&self, n: usize) -> bool {
        self.max_n.is_none_or(|m| n <= m) && self.n_range.as_ref().is_none_or(|r| r.contains(&n))
    }

    pub fn qs_or(&self, default: &[u64]) -> Vec<u64> {
        self.qs.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// Point set for actions: the natural one or `k`-subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSpec {
    Natural,
    Subsets(usize),
}

impl FromStr for ActionSpec {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "natural" => Ok(ActionSpec::Natural),
            Some(("subsets", k)) => k
                .parse()
                .map(ActionSpec::Subsets)
                .map_err(|_| VerifyError::InvalidOption(format!("bad subset size {k:?}"))),
            _ => Err(VerifyError::InvalidOption(format!(
                "action must be natural or subsets:k, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Natural => write!(f, "natural"),
            ActionSpec::Subsets(k) => write!(f, "subsets:{k}"),
        }
    }
}

/// Parses `7`, `5..9` or `5..=9`; both range forms are inclusive.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<usize>, VerifyError> {
    let bad = || VerifyError::InvalidOption(format!("expected N or A..B, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        None => num(s).map(|n| n..=n),
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Per-check seed derived from the root seed and the qualified check name.
pub fn derive_seed(root: u64, suite: &str, check: &str) -> u64 {
    let mut bytes = root.to_le_bytes().to_vec();
    bytes.extend_from_slice(suite.as_bytes());
    bytes.push(b'/');
    bytes.extend_from_slice(check.as_bytes());
    fnv1a(&bytes)
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

/// Runs every check of `name` (or of every suite for `"all"`), in
/// registration order.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Vec<CheckResult>, VerifyError> {
    if name == "all" {
        return Ok(SUITES
            .iter()
            .flat_map(|(n, build)| run_jobs(n, build(config), config))
            .collect());
    }
    let (n, build) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| VerifyError::UnknownSuite(name.into()))?;
    Ok(run_jobs(n, build(config), config))
}

fn run_jobs(suite: &str, jobs: Vec<Job>, config: &SuiteConfig) -> Vec<CheckResult> {
    jobs.into_par_iter()
        .map(|job| {
            let seed = derive_seed(config.seed, suite, &job.name);
            let start = Instant::now();
            let outcome = (job.body)(seed);
            let runtime_ms = config.timings.then(|| start.elapsed().as_millis() as u64);
            let (comparator, expected, actual, pass, skipped, detail) = match outcome {
                Ok(o) => (o.comparator, o.expected, o.actual, o.pass, None, o.detail),
                Err(CheckError::Skip(reason)) => (
                    "skip".into(),
                    Value::Null,
                    Value::Null,
                    false,
                    Some(reason),
                    None,
                ),
                Err(CheckError::Fail(err)) => (
                    "error".into(),
                    Value::Null,
                    Value::String(err),
                    false,
                    None,
                    None,
                ),
            };
            CheckResult {
                suite: suite.to_string(),
                check_name: job.name,
                params: job.params,
                comparator,
                expected,
                actual,
                pass,
                skipped,
                detail,
                runtime_ms,
                seed,
            }
        })
        .collect()
}

/// Exit status convention: success iff no check failed.
pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| !r.is_failure())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(VerifyError::InvalidOption(format!(
                "format must be json or tsv, got {s:?}"
            ))),
        }
    }
}

pub const TSV_HEADER: &str =
    "suite\tcheck_name\tstatus\tcomparator\texpected\tactual\tparams\tseed\truntime_ms";

/// One line per result, no trailing newline.
pub fn render(result: &CheckResult, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(result).expect("results serialize"),
        Format::Tsv => {
            let status = match (&result.skipped, result.pass) {
                (Some(_), _) => "skip",
                (None, true) => "pass",
                (None, false) => "FAIL",
            };
            let cell = |v: &Value| tsv_escape(&v.to_string());
            [
                result.suite.clone(),
                tsv_escape(&result.check_name),
                status.to_string(),
                result.comparator.clone(),
                cell(&result.expected),
                cell(&result.actual),
                tsv_escape(&serde_json::to_string(&result.params).expect("params serialize")),
                result.seed.to_string(),
                result.runtime_ms.map(|t| t.to_string()).unwrap_or_default(),
            ]
            .join("\t")
        }
    }
}

fn tsv_escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('\t', "\\t")
        .replace('\n', "\\n")
}
