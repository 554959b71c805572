//! Continuous-time truth evaluation of formulas over signals.
//!
//! Every subformula is mapped to the exact ultimately periodic set of
//! instants where it holds; truth at an instant is then membership.
//! Evaluation works on the original formula, with no rewriting shared
//! with the discretization pipeline.

use std::collections::HashMap;

use mitl_core::{MitlFormula, TimeInterval};
use model_builder::Signal;
use num::{BigInt, Zero};
use thiserror::Error;

use crate::upset::{
    merge_comps, op_and, op_future, op_not, op_past, op_since, op_until, retry_cap, window_comps,
    Comp, Q, UPSet, UpsetError, Window,
};

/// Errors from oracle evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The signal's explicit part contradicts its declared periodicity.
    #[error("signal tail is not periodic: {0}")]
    SignalTail(String),
    /// The evaluation horizon was insufficient to stabilize a result set.
    #[error("evaluation horizon insufficient: {0}")]
    Horizon(String),
    /// An instant outside the signal domain was queried.
    #[error("instant {0} is negative")]
    NegativeInstant(String),
}

impl From<UpsetError> for OracleError {
    fn from(e: UpsetError) -> Self {
        match e {
            UpsetError::Stabilization(m) | UpsetError::Invalid(m) => OracleError::Horizon(m),
        }
    }
}

/// Oracle over one signal; caches the truth set of each subformula.
pub struct Oracle<'a> {
    sig: &'a Signal,
    delta: Q,
    t_sig: Q,
    cap: usize,
    memo: HashMap<MitlFormula, UPSet>,
}

impl<'a> Oracle<'a> {
    /// Prepares an oracle for `sig`, sizing the stabilization budget to
    /// the formula's constants and depth.
    pub fn new(sig: &'a Signal, formula: &MitlFormula) -> Oracle<'a> {
        let delta = sig.period.clone();
        let t_sig = sig.tail_time().clone();
        let cap = retry_cap(formula.max_endpoint(), formula.depth(), &delta);
        Oracle {
            sig,
            delta,
            t_sig,
            cap,
            memo: HashMap::new(),
        }
    }

    /// The exact set of instants where `f` holds on the signal.
    pub fn truth_set(&mut self, f: &MitlFormula) -> Result<UPSet, OracleError> {
        if let Some(u) = self.memo.get(f) {
            return Ok(u.clone());
        }
        let u = match f {
            MitlFormula::Prop(name) => self.atom_upset(name)?,
            MitlFormula::Not(g) => {
                let a = self.truth_set(g)?;
                op_not(&a, self.cap)?
            }
            MitlFormula::And(g, h) => {
                let a = self.truth_set(g)?;
                let b = self.truth_set(h)?;
                op_and(&a, &b, self.cap)?
            }
            MitlFormula::Eventually(i, g) => {
                let a = self.truth_set(g)?;
                op_future(&a, &to_window(i), self.cap)?
            }
            MitlFormula::Globally(i, g) => {
                let a = self.truth_set(g)?;
                let na = op_not(&a, self.cap)?;
                let fna = op_future(&na, &to_window(i), self.cap)?;
                op_not(&fna, self.cap)?
            }
            MitlFormula::PastEventually(i, g) => {
                let a = self.truth_set(g)?;
                op_past(&a, &to_window(i), self.cap)?
            }
            MitlFormula::Until(i, g, h) => {
                let a = self.truth_set(g)?;
                let b = self.truth_set(h)?;
                op_until(&a, &b, &to_window(i), self.cap)?
            }
            MitlFormula::Since(i, g, h) => {
                let a = self.truth_set(g)?;
                let b = self.truth_set(h)?;
                op_since(&a, &b, &to_window(i), self.cap)?
            }
        };
        self.memo.insert(f.clone(), u.clone());
        Ok(u)
    }

    /// Truth of `f` at instant `t`.
    pub fn eval_at(&mut self, f: &MitlFormula, t: &Q) -> Result<bool, OracleError> {
        if t < &Q::zero() {
            return Err(OracleError::NegativeInstant(t.to_string()));
        }
        Ok(self.truth_set(f)?.contains(t))
    }

    /// The set of instants where an atom holds; an atom the signal never
    /// mentions holds nowhere.
    fn atom_upset(&self, name: &str) -> Result<UPSet, OracleError> {
        let bps = &self.sig.breakpoints;
        let mut comps: Vec<Comp> = Vec::new();
        for (i, bp) in bps.iter().enumerate() {
            if bp.point.contains(name) {
                comps.push(Comp::point(bp.t.clone()));
            }
            if i + 1 < bps.len() && bp.interval.contains(name) {
                comps.push(Comp {
                    lo: bp.t.clone(),
                    lo_closed: false,
                    hi: bps[i + 1].t.clone(),
                    hi_closed: false,
                });
            }
        }
        let merged = merge_comps(comps);
        let limit = &self.t_sig + &self.delta;
        let covered = bps.last().map(|b| b.t.clone()).unwrap_or_default();
        let check_hi = covered.clone().min(&limit + &self.delta);
        if check_hi > limit && !tail_consistent(&merged, &self.t_sig, &self.delta, &check_hi) {
            return Err(OracleError::SignalTail(format!(
                "atom {} differs between consecutive periods",
                name
            )));
        }
        Ok(UPSet::from_declared(merged, self.t_sig.clone(), self.delta.clone()))
    }
}

/// Compares the explicit content on `[t + delta, check_hi)` against the
/// shifted pattern window.
fn tail_consistent(comps: &[Comp], t: &Q, delta: &Q, check_hi: &Q) -> bool {
    let first = window_comps(comps, t, &(check_hi - delta));
    let second = window_comps(comps, &(t + delta), check_hi);
    first
        .iter()
        .map(|c| Comp {
            lo: &c.lo + delta,
            lo_closed: c.lo_closed,
            hi: &c.hi + delta,
            hi_closed: c.hi_closed,
        })
        .collect::<Vec<_>>()
        == second
}

fn to_window(i: &TimeInterval) -> Window {
    Window {
        lo: Q::from(BigInt::from(i.lower)),
        lo_closed: !i.lower_open,
        hi: i.upper.map(|u| Q::from(BigInt::from(u))),
        hi_closed: i.upper.is_some() && !i.upper_open,
    }
}

/// Truth of `f` on `sig` at instant `t`.
pub fn eval_at(sig: &Signal, f: &MitlFormula, t: &Q) -> Result<bool, OracleError> {
    Oracle::new(sig, f).eval_at(f, t)
}

/// Truth of `f` on `sig` at the origin.
pub fn holds(sig: &Signal, f: &MitlFormula) -> Result<bool, OracleError> {
    eval_at(sig, f, &Q::zero())
}

/// The exact truth set of `f` on `sig`.
pub fn truth_set(sig: &Signal, f: &MitlFormula) -> Result<UPSet, OracleError> {
    Oracle::new(sig, f).truth_set(f)
}

/// Parses an exact rational literal, panicking on malformed input.
pub fn rational(s: &str) -> Q {
    model_builder::signal::parse_rational(s).expect("rational literal")
}
