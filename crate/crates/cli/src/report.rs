//! Check reports: verdict, bound, per-stage timings, witness, and oracle
//! result, rendered as human text and as JSON.

use mitl_core::Mode;
use model_builder::Signal;
use serde_json::{json, Value};
use std::fmt;
use std::time::Duration;

/// Overall outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A model exists at the reported bound.
    Sat,
    /// No model exists at any tried bound.
    NoModelAtBound,
    /// The solver gave up without a verdict.
    Unknown,
    /// The solver budget ran out.
    Timeout,
    /// A pipeline stage failed.
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "sat",
            Verdict::NoModelAtBound => "no-model-at-bound",
            Verdict::Unknown => "unknown",
            Verdict::Timeout => "timeout",
            Verdict::Error => "error",
        })
    }
}

/// What witness validation concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleCheck {
    /// The witness satisfies the formula at the origin.
    Confirmed,
    /// Validation was disabled by flag.
    Skipped,
    /// The witness fails the formula: a soundness bug, reported loudly.
    Rejected,
}

impl fmt::Display for OracleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleCheck::Confirmed => "confirmed",
            OracleCheck::Skipped => "skipped",
            OracleCheck::Rejected => "rejected",
        })
    }
}

/// Everything one check run produced.
///
/// A witness is present exactly for sat verdicts, and an oracle result
/// exactly when a witness is.
#[derive(Debug, Clone)]
pub struct CheckReport {
    /// Outcome.
    pub verdict: Verdict,
    /// Bound of the final attempt.
    pub bound: usize,
    /// Mode the check ran in.
    pub mode: Mode,
    /// Wall-clock time per pipeline stage, in execution order.
    pub stages: Vec<(String, Duration)>,
    /// Reconstructed signal.
    pub witness: Option<Signal>,
    /// Witness validation result.
    pub oracle: Option<OracleCheck>,
    /// Failure or give-up detail.
    pub detail: Option<String>,
}

impl CheckReport {
    /// Process exit status for this report.
    pub fn exit_code(&self) -> i32 {
        match (self.verdict, self.oracle) {
            (Verdict::Sat, Some(OracleCheck::Rejected)) => 4,
            (Verdict::Sat, _) => 0,
            (Verdict::NoModelAtBound, _) => 1,
            (Verdict::Unknown, _) | (Verdict::Timeout, _) => 2,
            (Verdict::Error, _) => 3,
        }
    }

    /// Human-readable rendering, one field per line.
    pub fn render(&self) -> String {
        let mut out = format!(
            "verdict: {}\nmode: {}\nbound: {}\n",
            self.verdict, self.mode, self.bound
        );
        if let Some(oracle) = self.oracle {
            out.push_str(&format!("oracle: {oracle}\n"));
        }
        if let Some(detail) = &self.detail {
            out.push_str(&format!("detail: {detail}\n"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: {} breakpoints, repeating from t={} with period {}\n",
                w.breakpoints.len(),
                w.tail_time(),
                w.period
            ));
        }
        for (name, took) in &self.stages {
            out.push_str(&format!("stage {name}: {:.3}s\n", took.as_secs_f64()));
        }
        out
    }

    /// JSON rendering with the same fields.
    pub fn to_json(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|(name, took)| json!({"stage": name, "seconds": took.as_secs_f64()}))
            .collect();
        json!({
            "verdict": self.verdict.to_string(),
            "mode": self.mode.to_string(),
            "bound": self.bound,
            "stages": stages,
            "witness": self.witness.as_ref().map(Signal::to_json),
            "oracle": self.oracle.map(|o| o.to_string()),
            "detail": self.detail,
        })
    }
}
