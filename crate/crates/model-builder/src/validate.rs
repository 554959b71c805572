//! Independent checks of a decoded model's structural invariants: strict
//! time advance, clock progression and resets, nonnegative clock values,
//! and loop-edge consistency. Violations signal an encoder bug and are
//! reported loudly rather than patched over.

use bsc_encoder::DiscreteModel;
use cltloc_ir::{ClockId, ClockKind};
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// A broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    /// Loop target outside `1..=bound`.
    #[error("loop target {loop_idx} out of range for bound {bound}")]
    BadLoop {
        /// Stored loop target.
        loop_idx: usize,
        /// Stored bound.
        bound: usize,
    },
    /// A row is not `bound + 1` long.
    #[error("row {row} has {got} values, expected {expected}")]
    RowLength {
        /// Offending row.
        row: String,
        /// Expected length.
        expected: usize,
        /// Actual length.
        got: usize,
    },
    /// A time advance is zero or negative.
    #[error("delta at position {position} is {value}, expected positive")]
    NonpositiveDelta {
        /// Offending position.
        position: usize,
        /// Stored advance.
        value: String,
    },
    /// A clock value is negative.
    #[error("clock {clock} is {value} at position {position}")]
    NegativeClock {
        /// Offending clock.
        clock: ClockId,
        /// Offending position.
        position: usize,
        /// Stored value.
        value: String,
    },
    /// A clock neither progressed by the advance nor reset.
    #[error("clock {clock} jumps from {from} to {to} across position {position}")]
    BrokenProgression {
        /// Offending clock.
        clock: ClockId,
        /// Position the step leaves.
        position: usize,
        /// Value before the step.
        from: String,
        /// Value after the step.
        to: String,
    },
    /// A clock's loop-edge value neither resets, nor carries the last
    /// advance, nor saturates above the largest compared constant.
    #[error("clock {clock} wraps to {to} but the loop edge yields {from}")]
    BrokenWrap {
        /// Offending clock.
        clock: ClockId,
        /// Value the last position plus its advance produces.
        from: String,
        /// Stored value at the loop target.
        to: String,
    },
    /// A clock row the layout requires is absent.
    #[error("no row for clock {clock}")]
    MissingClock {
        /// Expected clock.
        clock: ClockId,
    },
    /// A clock that must reset at the origin reads a nonzero value there.
    #[error("clock {clock} reads {value} at the origin, expected zero")]
    OriginReset {
        /// Offending clock.
        clock: ClockId,
        /// Stored origin value.
        value: String,
    },
    /// Both pair clocks of one entry reset at the same position.
    #[error("both pair clocks of entry {owner} reset at position {position}")]
    DoublePairReset {
        /// Owning entry.
        owner: u32,
        /// Offending position.
        position: usize,
    },
    /// Consecutive pair resets of one entry hit the same clock.
    #[error("pair clocks of entry {owner} reset out of turn at position {position}")]
    BrokenAlternation {
        /// Owning entry.
        owner: u32,
        /// Offending position.
        position: usize,
    },
    /// Two auxiliaries of one entry reset at the same position.
    #[error("two auxiliaries of entry {owner} reset together at position {position}")]
    AuxClash {
        /// Owning entry.
        owner: u32,
        /// Offending position.
        position: usize,
    },
    /// An auxiliary reset skips the circular rotation order.
    #[error("auxiliary {got} of entry {owner} resets at position {position}, expected {expected}")]
    BrokenRotation {
        /// Owning entry.
        owner: u32,
        /// Offending position.
        position: usize,
        /// Auxiliary whose turn it was.
        expected: u32,
        /// Auxiliary that actually reset.
        got: u32,
    },
}

/// Checks every invariant of a decoded model.
///
/// `largest_constant` is the biggest constant compared against any clock;
/// across the loop edge a clock may sit at unequal values strictly above
/// it on both sides, since no comparison distinguishes such values.
pub fn validate_model(m: &DiscreteModel, largest_constant: u64) -> Result<(), ValidateError> {
    let n = m.positions();
    if m.loop_idx == 0 || m.loop_idx > m.bound {
        return Err(ValidateError::BadLoop {
            loop_idx: m.loop_idx,
            bound: m.bound,
        });
    }
    let row_len = |row: &str, got: usize| -> Result<(), ValidateError> {
        if got != n {
            return Err(ValidateError::RowLength {
                row: row.to_string(),
                expected: n,
                got,
            });
        }
        Ok(())
    };
    row_len("delta", m.delta.len())?;
    for (name, row) in &m.atoms {
        row_len(name, row.len())?;
    }
    for (clock, row) in &m.clocks {
        row_len(&clock.to_string(), row.len())?;
    }

    for (position, d) in m.delta.iter().enumerate() {
        if d <= &BigRational::zero() {
            return Err(ValidateError::NonpositiveDelta {
                position,
                value: d.to_string(),
            });
        }
    }

    let limit = BigRational::from_integer(largest_constant.into());
    for (&clock, row) in &m.clocks {
        for (position, v) in row.iter().enumerate() {
            if v < &BigRational::zero() {
                return Err(ValidateError::NegativeClock {
                    clock,
                    position,
                    value: v.to_string(),
                });
            }
        }
        for position in 0..m.bound {
            let stepped = &row[position] + &m.delta[position];
            let next = &row[position + 1];
            if next != &stepped && !next.is_zero() {
                return Err(ValidateError::BrokenProgression {
                    clock,
                    position,
                    from: row[position].to_string(),
                    to: next.to_string(),
                });
            }
        }
        let wrapped = &row[m.bound] + &m.delta[m.bound];
        let target = &row[m.loop_idx];
        let saturated = target > &limit && wrapped > limit;
        if target != &wrapped && !target.is_zero() && !saturated {
            return Err(ValidateError::BrokenWrap {
                clock,
                from: wrapped.to_string(),
                to: target.to_string(),
            });
        }
    }
    Ok(())
}

/// Checks the reset discipline the clock layout imposes: the first pair
/// clock and first auxiliary of every entry read zero at the origin, pair
/// clocks reset strictly alternately and never both at once, and
/// auxiliaries reset one at a time in circular rotation order.
///
/// Row lengths are assumed checked; run [`validate_model`] first.
pub fn validate_discipline(m: &DiscreteModel) -> Result<(), ValidateError> {
    let mut pairs: BTreeMap<u32, [Option<&Vec<BigRational>>; 2]> = BTreeMap::new();
    let mut auxes: BTreeMap<u32, BTreeMap<u32, &Vec<BigRational>>> = BTreeMap::new();
    for (&clock, row) in &m.clocks {
        match clock.kind {
            ClockKind::Z0 => pairs.entry(clock.owner).or_default()[0] = Some(row),
            ClockKind::Z1 => pairs.entry(clock.owner).or_default()[1] = Some(row),
            ClockKind::Aux(j) => {
                auxes.entry(clock.owner).or_default().insert(j, row);
            }
        }
    }

    let missing = |owner: u32, kind: ClockKind| ValidateError::MissingClock {
        clock: ClockId { owner, kind },
    };
    for (&owner, rows) in &pairs {
        let z0 = rows[0].ok_or_else(|| missing(owner, ClockKind::Z0))?;
        let z1 = rows[1].ok_or_else(|| missing(owner, ClockKind::Z1))?;
        if !z0[0].is_zero() {
            return Err(ValidateError::OriginReset {
                clock: ClockId {
                    owner,
                    kind: ClockKind::Z0,
                },
                value: z0[0].to_string(),
            });
        }
        let mut last = 0usize;
        for position in 0..m.positions() {
            let resets = [z0[position].is_zero(), z1[position].is_zero()];
            if resets[0] && resets[1] {
                return Err(ValidateError::DoublePairReset { owner, position });
            }
            for (which, hit) in resets.into_iter().enumerate() {
                if hit && position > 0 {
                    if which == last {
                        return Err(ValidateError::BrokenAlternation { owner, position });
                    }
                    last = which;
                }
            }
        }
    }

    for (&owner, rows) in &auxes {
        let d = rows.len() as u32;
        let indexed: Vec<&Vec<BigRational>> = (0..d)
            .map(|j| {
                rows.get(&j)
                    .copied()
                    .ok_or_else(|| missing(owner, ClockKind::Aux(j)))
            })
            .collect::<Result<_, _>>()?;
        if !indexed[0][0].is_zero() {
            return Err(ValidateError::OriginReset {
                clock: ClockId {
                    owner,
                    kind: ClockKind::Aux(0),
                },
                value: indexed[0][0].to_string(),
            });
        }
        let mut last = 0u32;
        for position in 0..m.positions() {
            let mut zeroed = indexed
                .iter()
                .enumerate()
                .filter(|(_, row)| row[position].is_zero())
                .map(|(j, _)| j as u32);
            let Some(got) = zeroed.next() else { continue };
            if zeroed.next().is_some() {
                return Err(ValidateError::AuxClash { owner, position });
            }
            if position > 0 {
                let expected = (last + 1) % d;
                if got != expected {
                    return Err(ValidateError::BrokenRotation {
                        owner,
                        position,
                        expected,
                        got,
                    });
                }
                last = got;
            }
        }
    }
    Ok(())
}
