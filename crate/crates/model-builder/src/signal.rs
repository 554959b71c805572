//! Finitely-variable continuous-time signals with an ultimately periodic tail.

use num::{BigRational, Zero};
use std::collections::BTreeSet;
use std::str::FromStr;
use thiserror::Error;

/// Errors from signal construction or JSON decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignalError {
    /// Structural invariant broken.
    #[error("invalid signal: {0}")]
    Invalid(String),
    /// JSON shape or number syntax error.
    #[error("signal json error: {0}")]
    Json(String),
}

/// One breakpoint: the atoms true exactly at `t` and on the open interval
/// up to the next breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    /// Breakpoint instant.
    pub t: BigRational,
    /// Atoms true at the instant `t`.
    pub point: BTreeSet<String>,
    /// Atoms true strictly between `t` and the following breakpoint.
    pub interval: BTreeSet<String>,
}

/// A signal given by breakpoints on an initial segment plus a periodic tail.
///
/// Breakpoint times are strictly increasing and start at 0. From
/// `breakpoints[tail_start].t` on, the signal repeats with the given
/// period; the breakpoint list covers at least one full period past the
/// tail start so the repeating pattern is explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signal {
    /// Breakpoints with their point and interval labels.
    pub breakpoints: Vec<Breakpoint>,
    /// Index of the breakpoint where the periodic tail begins.
    pub tail_start: usize,
    /// Tail period; strictly positive.
    pub period: BigRational,
}

impl Signal {
    /// Checks all structural invariants, returning the signal on success.
    pub fn validated(self) -> Result<Self, SignalError> {
        if self.breakpoints.is_empty() {
            return Err(SignalError::Invalid("no breakpoints".into()));
        }
        if !self.breakpoints[0].t.is_zero() {
            return Err(SignalError::Invalid(format!(
                "first breakpoint at {}, expected 0",
                self.breakpoints[0].t
            )));
        }
        for w in self.breakpoints.windows(2) {
            if w[0].t >= w[1].t {
                return Err(SignalError::Invalid(format!(
                    "breakpoint times not strictly increasing at {}",
                    w[1].t
                )));
            }
        }
        if self.tail_start >= self.breakpoints.len() {
            return Err(SignalError::Invalid(format!(
                "tail start {} out of range",
                self.tail_start
            )));
        }
        if self.period <= BigRational::zero() {
            return Err(SignalError::Invalid(format!(
                "period {} not positive",
                self.period
            )));
        }
        let tail_t = &self.breakpoints[self.tail_start].t;
        let last_t = &self.breakpoints[self.breakpoints.len() - 1].t;
        if last_t < &(tail_t + &self.period) {
            return Err(SignalError::Invalid(format!(
                "breakpoints end at {} but must cover one full period past the \
                 tail start, up to {}",
                last_t,
                tail_t + &self.period
            )));
        }
        Ok(self)
    }

    /// Time where the periodic tail begins.
    pub fn tail_time(&self) -> &BigRational {
        &self.breakpoints[self.tail_start].t
    }

    /// True when `name` holds at instant `t`; `t` may lie beyond the
    /// covered segment, in which case it is folded into the tail pattern.
    pub fn holds_at(&self, name: &str, t: &BigRational) -> bool {
        let t = self.fold(t);
        // Find the last breakpoint with time <= t.
        let idx = match self
            .breakpoints
            .binary_search_by(|b| b.t.cmp(&t))
        {
            Ok(i) => return self.breakpoints[i].point.contains(name),
            Err(0) => unreachable!("fold keeps times at or above 0"),
            Err(i) => i - 1,
        };
        self.breakpoints[idx].interval.contains(name)
    }

    /// Folds `t` into the covered segment using the periodic tail.
    fn fold(&self, t: &BigRational) -> BigRational {
        let tail_t = self.tail_time();
        let limit = tail_t + &self.period;
        if t < &limit {
            return t.clone();
        }
        let span = t - tail_t;
        let periods = (&span / &self.period).floor();
        let folded = t - periods * &self.period;
        // Numerical identity keeps folded in [tail, tail + period).
        debug_assert!(folded >= *tail_t && folded < limit);
        folded
    }

    /// Serializes to the documented JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Value};
        let bps: Vec<Value> = self
            .breakpoints
            .iter()
            .map(|b| {
                json!({
                    "t": b.t.to_string(),
                    "point": b.point.iter().cloned().collect::<Vec<_>>(),
                    "interval": b.interval.iter().cloned().collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "breakpoints": bps,
            "tailStart": self.tail_start,
            "period": self.period.to_string(),
        })
    }

    /// Parses the documented JSON form and validates the result.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, SignalError> {
        let obj = v
            .as_object()
            .ok_or_else(|| SignalError::Json("expected an object".into()))?;
        let bps = obj
            .get("breakpoints")
            .and_then(|b| b.as_array())
            .ok_or_else(|| SignalError::Json("missing breakpoints array".into()))?;
        let mut breakpoints = Vec::with_capacity(bps.len());
        for bp in bps {
            let t = bp
                .get("t")
                .and_then(|t| t.as_str())
                .ok_or_else(|| SignalError::Json("breakpoint missing t".into()))?;
            let t = parse_rational(t)?;
            let point = parse_names(bp.get("point"))?;
            let interval = parse_names(bp.get("interval"))?;
            breakpoints.push(Breakpoint { t, point, interval });
        }
        let tail_start = obj
            .get("tailStart")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| SignalError::Json("missing tailStart".into()))?
            as usize;
        let period = obj
            .get("period")
            .and_then(|v| v.as_str())
            .ok_or_else(|| SignalError::Json("missing period".into()))?;
        let period = parse_rational(period)?;
        Signal {
            breakpoints,
            tail_start,
            period,
        }
        .validated()
    }
}

fn parse_names(v: Option<&serde_json::Value>) -> Result<BTreeSet<String>, SignalError> {
    let arr = v
        .and_then(|v| v.as_array())
        .ok_or_else(|| SignalError::Json("missing atom array".into()))?;
    arr.iter()
        .map(|n| {
            n.as_str()
                .map(str::to_string)
                .ok_or_else(|| SignalError::Json("atom names must be strings".into()))
        })
        .collect()
}

/// Parses `"7"` or `"3/2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, SignalError> {
    BigRational::from_str(s)
        .map_err(|e| SignalError::Json(format!("bad rational '{}': {}", s, e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn bp(t: BigRational, point: &[&str], interval: &[&str]) -> Breakpoint {
        Breakpoint {
            t,
            point: point.iter().map(|s| s.to_string()).collect(),
            interval: interval.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn sample() -> Signal {
        // p on [0,1), then nothing until 2, then p at the point 3 inside a
        // tail of period 2 starting at 2.
        Signal {
            breakpoints: vec![
                bp(rat(0, 1), &["p"], &["p"]),
                bp(rat(1, 1), &[], &[]),
                bp(rat(2, 1), &[], &[]),
                bp(rat(3, 1), &["p"], &[]),
                bp(rat(4, 1), &[], &[]),
            ],
            tail_start: 2,
            period: rat(2, 1),
        }
        .validated()
        .unwrap()
    }

    #[test]
    fn validation_rejects_broken_invariants() {
        let mut s = sample();
        s.breakpoints[0].t = rat(1, 2);
        assert!(matches!(s.validated(), Err(SignalError::Invalid(_))));

        let mut s = sample();
        s.period = rat(0, 1);
        assert!(matches!(s.validated(), Err(SignalError::Invalid(_))));

        let mut s = sample();
        s.breakpoints.truncate(3);
        assert!(matches!(s.validated(), Err(SignalError::Invalid(_))));
    }

    #[test]
    fn holds_at_reads_points_and_intervals() {
        let s = sample();
        assert!(s.holds_at("p", &rat(0, 1)));
        assert!(s.holds_at("p", &rat(1, 2)));
        assert!(!s.holds_at("p", &rat(1, 1)));
        assert!(!s.holds_at("p", &rat(5, 2)));
        assert!(s.holds_at("p", &rat(3, 1)));
        assert!(!s.holds_at("p", &rat(7, 2)));
    }

    #[test]
    fn holds_at_folds_into_the_tail() {
        let s = sample();
        // 5 folds to 3 (point p), 9/2 folds to 5/2 (no p), 7 folds to 3.
        assert!(s.holds_at("p", &rat(5, 1)));
        assert!(!s.holds_at("p", &rat(9, 2)));
        assert!(s.holds_at("p", &rat(7, 1)));
        assert!(s.holds_at("p", &rat(101, 1)));
    }

    #[test]
    fn json_round_trips() {
        let s = sample();
        let v = s.to_json();
        assert_eq!(v["tailStart"], 2);
        assert_eq!(v["period"], "2");
        assert_eq!(v["breakpoints"][0]["t"], "0");
        let back = Signal::from_json(&v).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn json_keeps_fractional_times_exact() {
        let mut s = sample();
        s.breakpoints[1].t = rat(3, 2);
        let s = s.validated().unwrap();
        let v = s.to_json();
        assert_eq!(v["breakpoints"][1]["t"], "3/2");
        assert_eq!(Signal::from_json(&v).unwrap(), s);
    }
}
