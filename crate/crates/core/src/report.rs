use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// One disagreement found by a sweep.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl Failure {
    pub fn new(input: impl ToString, expected: impl ToString, got: impl ToString) -> Self {
        Failure {
            input: input.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}

/// Outcome of an exhaustive or seeded-random check.
///
/// The serialized form is reproducible: failures are sorted, maps are
/// ordered, and the wall-clock time is left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub sweep: String,
    pub bounds_used: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub instances_checked: u64,
    pub counts: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn new(sweep: &str) -> Self {
        SweepReport {
            sweep: sweep.to_string(),
            bounds_used: BTreeMap::new(),
            seed: None,
            instances_checked: 0,
            counts: BTreeMap::new(),
            failures: Vec::new(),
            passed: true,
            elapsed: Duration::ZERO,
        }
    }

    pub fn bound(mut self, name: &str, value: impl TryInto<i64>) -> Self {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.bounds_used.insert(name.to_string(), v);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    /// Sort failures and settle `passed`.
    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.failures.sort();
        self.passed = self.failures.is_empty();
        self.elapsed = elapsed;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
