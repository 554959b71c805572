//! Time intervals with natural-number endpoints and per-endpoint openness.

use std::fmt;
use thiserror::Error;

/// Errors from interval construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    /// Lower bound must be strictly below the upper bound.
    #[error("empty interval: lower bound {lower} is not below upper bound {upper}")]
    Empty { lower: u64, upper: u64 },
    /// An infinite upper bound cannot be attained.
    #[error("interval closed at infinity")]
    ClosedAtInfinity,
}

/// A nonempty time interval with natural endpoints; `upper = None` means infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeInterval {
    /// Lower endpoint.
    pub lower: u64,
    /// Upper endpoint, `None` for an unbounded interval.
    pub upper: Option<u64>,
    /// True when the lower endpoint is excluded.
    pub lower_open: bool,
    /// True when the upper endpoint is excluded; forced for unbounded intervals.
    pub upper_open: bool,
}

impl TimeInterval {
    /// Builds an interval, rejecting empty ranges and `[.., inf]`.
    pub fn new(
        lower: u64,
        upper: Option<u64>,
        lower_open: bool,
        upper_open: bool,
    ) -> Result<Self, IntervalError> {
        match upper {
            Some(u) => {
                // Endpoints are naturals, so lower < upper already guarantees
                // nonemptiness for every combination of openness flags.
                if lower >= u {
                    return Err(IntervalError::Empty { lower, upper: u });
                }
            }
            None => {
                if !upper_open {
                    return Err(IntervalError::ClosedAtInfinity);
                }
            }
        }
        Ok(Self {
            lower,
            upper,
            lower_open,
            upper_open,
        })
    }

    /// Shorthand for a bounded interval.
    pub fn bounded(lower: u64, upper: u64, lower_open: bool, upper_open: bool) -> Self {
        Self::new(lower, Some(upper), lower_open, upper_open).expect("invalid bounded interval")
    }

    /// Shorthand for an unbounded interval.
    pub fn unbounded(lower: u64, lower_open: bool) -> Self {
        Self::new(lower, None, lower_open, true).expect("invalid unbounded interval")
    }

    /// The interval `(0, inf)`.
    pub fn zero_inf() -> Self {
        Self::unbounded(0, true)
    }

    /// True when the upper endpoint is infinite.
    pub fn is_unbounded(&self) -> bool {
        self.upper.is_none()
    }

    /// True when the lower endpoint is an attained 0.
    pub fn closed_at_zero(&self) -> bool {
        self.lower == 0 && !self.lower_open
    }

    /// True for the interval `(0, inf)`.
    pub fn is_zero_inf(&self) -> bool {
        self.lower == 0 && self.lower_open && self.upper.is_none()
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_open { '(' } else { '[' };
        let close = if self.upper_open { ')' } else { ']' };
        match self.upper {
            Some(u) => write!(f, "{}{},{}{}", open, self.lower, u, close),
            None => write!(f, "{}{},inf)", open, self.lower),
        }
    }
}
