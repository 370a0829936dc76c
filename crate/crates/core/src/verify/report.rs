use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use std::collections::BTreeMap;

/// Outcome of one numerical check.
///
/// `passed` always equals `observed_error ≤ tolerance`; a failed side
/// condition (for example a non-monotone convergence scan) is recorded as an
/// infinite observed error together with a note. Wall time is kept for
/// display only and is not serialised, so reports from identical runs are
/// byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    #[serde(serialize_with = "ser_real", deserialize_with = "de_real")]
    pub observed_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Sample count or quadrature node count.
    pub effort: u64,
    /// Advisory checks are reported but never fail a suite.
    pub blocking: bool,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_time: f64,
}

fn ser_real<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn de_real<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, observed_error: f64, tolerance: f64) -> Self {
        VerificationReport {
            identity: identity.into(),
            params: BTreeMap::new(),
            observed_error,
            tolerance,
            passed: observed_error <= tolerance,
            effort: 0,
            blocking: true,
            notes: Vec::new(),
            wall_time: 0.0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn effort(mut self, effort: usize) -> Self {
        self.effort = effort as u64;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Mark as non-blocking.
    pub fn advisory(mut self) -> Self {
        self.blocking = false;
        self
    }

    /// Record a side condition; if it fails the observed error becomes
    /// infinite.
    pub fn require(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.observed_error = f64::INFINITY;
            self.passed = false;
            self.notes.push(format!("failed: {what}"));
        }
        self
    }

    /// Replace the tolerance and re-evaluate `passed`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.observed_error <= tolerance;
        self
    }

    pub(crate) fn timed(mut self, start: std::time::Instant) -> Self {
        self.wall_time = start.elapsed().as_secs_f64();
        self
    }

    /// Failing blocking checks make a suite fail; advisory ones never do.
    pub fn is_blocking_failure(&self) -> bool {
        self.blocking && !self.passed
    }
}
