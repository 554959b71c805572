//! Normalization into the translatable fragment.
//!
//! The normal form contains only atoms, negation, conjunction, untimed
//! until/since over `(0,inf)`, timed eventually, and timed past eventually.
//! Timed until/since are decomposed into a window part and an untimed part;
//! globally is the negation dual of eventually. In lcro mode the surviving
//! eventually windows are right-closed or unbounded and past operators are
//! rejected; in general mode any window survives except an attained lower
//! bound 0, which is split off as a disjunct.
//!
//! The until/since decomposition with a positive excluded lower bound is
//! exact when the hold operand never goes false at a single isolated
//! instant (always true on lcro signals with lcro-fragment operands). With
//! an attained positive lower bound, or on signals with such point gaps,
//! the decomposed form can be strictly weaker: lcro mode rejects the
//! former shape outright, and general-mode results are re-checked against
//! the original formula downstream.

use crate::formula::MitlFormula;
use crate::interval::TimeInterval;
use thiserror::Error;

/// Interpretation mode selecting the target fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Signals restricted to left-closed right-open intervals.
    Lcro,
    /// Arbitrary finitely-variable signals.
    General,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Lcro => write!(f, "lcro"),
            Mode::General => write!(f, "general"),
        }
    }
}

/// Errors from normalization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    /// The subformula has no equivalent in the lcro fragment.
    #[error("subformula '{subformula}' is not expressible in lcro mode: {reason}")]
    LcroInexpressible {
        /// Display form of the offending subformula.
        subformula: String,
        /// Why the shape is out of reach.
        reason: String,
    },
}

fn reject(src: &MitlFormula, reason: &str) -> NormalizeError {
    NormalizeError::LcroInexpressible {
        subformula: src.to_string(),
        reason: reason.to_string(),
    }
}

/// Builds an eventually over `i`, applying the mode's window policy.
fn mk_eventually(
    i: TimeInterval,
    g: MitlFormula,
    mode: Mode,
    src: &MitlFormula,
) -> Result<MitlFormula, NormalizeError> {
    match mode {
        Mode::Lcro => {
            if i.upper.is_some() && i.upper_open {
                return Err(reject(
                    src,
                    "a bounded right-open eventuality window cannot be tracked by \
                     left-closed right-open intervals",
                ));
            }
            Ok(MitlFormula::eventually(i, g))
        }
        Mode::General => {
            if i.closed_at_zero() {
                // An attained lower bound 0 makes the current instant a witness
                // position; split it off and keep the strict remainder.
                let strict = TimeInterval::new(0, i.upper, true, i.upper_open)
                    .expect("strict variant of a valid interval");
                Ok(MitlFormula::or(
                    g.clone(),
                    MitlFormula::eventually(strict, g),
                ))
            } else {
                Ok(MitlFormula::eventually(i, g))
            }
        }
    }
}

/// Builds a past eventually over `i` (general mode only), splitting an attained 0.
fn mk_past_eventually(i: TimeInterval, g: MitlFormula) -> MitlFormula {
    if i.closed_at_zero() {
        let strict = TimeInterval::new(0, i.upper, true, i.upper_open)
            .expect("strict variant of a valid interval");
        MitlFormula::or(g.clone(), MitlFormula::past_eventually(strict, g))
    } else {
        MitlFormula::past_eventually(i, g)
    }
}

/// Untimed until, with an attained 0 admitting the current instant directly.
fn mk_untimed_until(closed_at_zero: bool, a: MitlFormula, b: MitlFormula) -> MitlFormula {
    let u = MitlFormula::until(TimeInterval::zero_inf(), a, b.clone());
    if closed_at_zero {
        MitlFormula::or(b, u)
    } else {
        u
    }
}

fn mk_untimed_since(closed_at_zero: bool, a: MitlFormula, b: MitlFormula) -> MitlFormula {
    let s = MitlFormula::since(TimeInterval::zero_inf(), a, b.clone());
    if closed_at_zero {
        MitlFormula::or(b, s)
    } else {
        s
    }
}

fn mk_until(
    i: TimeInterval,
    a: MitlFormula,
    b: MitlFormula,
    mode: Mode,
    src: &MitlFormula,
) -> Result<MitlFormula, NormalizeError> {
    if i.is_zero_inf() {
        return Ok(MitlFormula::until(i, a, b));
    }
    if i.lower == 0 {
        if i.upper.is_none() {
            return Ok(mk_untimed_until(i.closed_at_zero(), a, b));
        }
        // Window starting at 0: untimed part plus the eventuality window.
        let u_part = mk_untimed_until(i.closed_at_zero(), a, b.clone());
        let f_part = mk_eventually(i, b, mode, src)?;
        return Ok(MitlFormula::and(u_part, f_part));
    }
    // Lower bound above 0: the untimed until must hold throughout an initial
    // window whose right end matches the lower bound's openness, conjoined
    // with the eventuality window when bounded.
    let guard_upper_open = !i.lower_open;
    let guard = TimeInterval::new(0, Some(i.lower), false, guard_upper_open)
        .expect("guard window of a valid interval");
    let untimed = MitlFormula::until(TimeInterval::zero_inf(), a, b.clone());
    let g_part = MitlFormula::not(mk_eventually(
        guard,
        MitlFormula::not(untimed),
        mode,
        src,
    )?);
    if i.upper.is_none() {
        Ok(g_part)
    } else {
        Ok(MitlFormula::and(g_part, mk_eventually(i, b, mode, src)?))
    }
}

fn mk_since(
    i: TimeInterval,
    a: MitlFormula,
    b: MitlFormula,
    src: &MitlFormula,
) -> Result<MitlFormula, NormalizeError> {
    if i.is_zero_inf() {
        return Ok(MitlFormula::since(i, a, b));
    }
    if i.lower == 0 {
        if i.upper.is_none() {
            return Ok(mk_untimed_since(i.closed_at_zero(), a, b));
        }
        let s_part = mk_untimed_since(i.closed_at_zero(), a, b.clone());
        let p_part = mk_past_eventually(i, b);
        return Ok(MitlFormula::and(s_part, p_part));
    }
    let guard_upper_open = !i.lower_open;
    let guard = TimeInterval::new(0, Some(i.lower), false, guard_upper_open)
        .expect("guard window of a valid interval");
    let untimed = MitlFormula::since(TimeInterval::zero_inf(), a, b.clone());
    let h_part = MitlFormula::not(mk_past_eventually(guard, MitlFormula::not(untimed)));
    let _ = src;
    if i.upper.is_none() {
        Ok(h_part)
    } else {
        Ok(MitlFormula::and(h_part, mk_past_eventually(i, b)))
    }
}

fn norm(f: &MitlFormula, mode: Mode) -> Result<MitlFormula, NormalizeError> {
    match f {
        MitlFormula::Prop(name) => Ok(MitlFormula::Prop(name.clone())),
        MitlFormula::Not(g) => Ok(MitlFormula::not(norm(g, mode)?)),
        MitlFormula::And(a, b) => Ok(MitlFormula::and(norm(a, mode)?, norm(b, mode)?)),
        MitlFormula::Eventually(i, g) => mk_eventually(*i, norm(g, mode)?, mode, f),
        MitlFormula::Globally(i, g) => Ok(MitlFormula::not(mk_eventually(
            *i,
            MitlFormula::not(norm(g, mode)?),
            mode,
            f,
        )?)),
        MitlFormula::Until(i, a, b) => mk_until(*i, norm(a, mode)?, norm(b, mode)?, mode, f),
        MitlFormula::Since(i, a, b) => match mode {
            Mode::Lcro => Err(reject(f, "past operators are outside the lcro fragment")),
            Mode::General => mk_since(*i, norm(a, mode)?, norm(b, mode)?, f),
        },
        MitlFormula::PastEventually(i, g) => match mode {
            Mode::Lcro => Err(reject(f, "past operators are outside the lcro fragment")),
            Mode::General => Ok(mk_past_eventually(*i, norm(g, mode)?)),
        },
    }
}

/// Rewrites `f` into the translatable fragment for `mode`.
pub fn normalize(f: &MitlFormula, mode: Mode) -> Result<MitlFormula, NormalizeError> {
    norm(f, mode)
}
