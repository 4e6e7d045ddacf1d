//! Structured outcomes of inequality checks, serializable as JSON.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    /// The checked inequality held on every sampled instance.
    Pass,
    /// A sampled instance broke an inequality that should hold.
    Fail,
    /// A certified counterexample was found (the desired outcome for
    /// condition-(2) witnesses).
    Violated,
    /// The finite computation neither certified nor refuted the claim.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Violated => "VIOLATED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// One function serialized for a witness: group header plus
/// `(element, re, im)` rows in canonical order. Values are strings so the
/// exact-rational path survives the round trip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionData {
    pub group: String,
    pub entries: Vec<(String, String, String)>,
}

/// Replayable description of the worst (or violating) instance of a check.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub numbers: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionData>,
}

impl Witness {
    pub fn new(kind: impl Into<String>) -> Self {
        Witness { kind: kind.into(), ..Default::default() }
    }

    pub fn with_element(mut self, name: &str, value: impl Into<String>) -> Self {
        self.elements.insert(name.to_string(), value.into());
        self
    }

    pub fn with_number(mut self, name: &str, value: impl Into<String>) -> Self {
        self.numbers.insert(name.to_string(), value.into());
        self
    }

    pub fn with_function(mut self, name: &str, data: FunctionData) -> Self {
        self.functions.insert(name.to_string(), data);
        self
    }
}

/// Outcome of one check. `lhs`, `rhs`, `ratio` summarize the worst sampled
/// instance; exact values ride along as strings where the rational path
/// produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: serde_json::Value,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, params: serde_json::Value) -> Self {
        VerificationReport {
            check: check.into(),
            params,
            lhs: 0.0,
            rhs: 0.0,
            ratio: 0.0,
            witnesses: Vec::new(),
            verdict: Verdict::Pass,
            seed: None,
            trials: 0,
            exact: None,
            wall_ms: None,
            version: Some(env!("CARGO_PKG_VERSION").to_string()),
        }
    }

    pub fn with_sides(mut self, lhs: f64, rhs: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.ratio = if rhs != 0.0 { lhs / rhs } else { f64::INFINITY };
        self
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn with_exact(mut self, name: &str, value: impl Into<String>) -> Self {
        self.exact.get_or_insert_with(BTreeMap::new).insert(name.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Strip non-reproducible fields (`--no-timestamp` contract).
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    /// Lossy CSV projection: witnesses and exact values are dropped.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.check,
            self.verdict.as_str(),
            self.lhs,
            self.rhs,
            self.ratio,
            self.trials,
            self.seed.map_or(String::new(), |s| s.to_string()),
        )
    }

    pub const CSV_HEADER: &'static str = "check,verdict,lhs,rhs,ratio,trials,seed";
}
