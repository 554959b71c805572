//! Continuous signal reconstruction: turns a discrete lasso model into
//! breakpoints with a periodic tail, unrolling the loop far enough to
//! cover a requested horizon.

use bsc_encoder::DiscreteModel;
use mitl_core::Mode;
use num::{BigRational, Zero};
use std::collections::BTreeSet;
use thiserror::Error;
use translator::AtomScheme;

use crate::signal::{Breakpoint, Signal, SignalError};

/// Errors from signal reconstruction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    /// The requested horizon is not positive.
    #[error("horizon {0} is not positive")]
    BadHorizon(String),
    /// The model lacks an atom row the scheme requires.
    #[error("model has no atom row for {0}")]
    SchemeMismatch(String),
    /// The assembled signal broke a structural invariant.
    #[error(transparent)]
    Signal(#[from] SignalError),
}

/// Reconstructs the continuous signal of a decoded model.
///
/// Position `j` becomes the breakpoint at time `Σ_{i<j} δ(i)`. The loop
/// is unrolled in whole periods until the last breakpoint reaches
/// `horizon`, and at least one full period past the tail start so the
/// repeating pattern is explicit.
pub fn to_signal(
    m: &DiscreteModel,
    scheme: &AtomScheme,
    horizon: &BigRational,
) -> Result<Signal, BuildError> {
    if horizon <= &BigRational::zero() {
        return Err(BuildError::BadHorizon(horizon.to_string()));
    }
    let times = m.times();
    let (point_rows, interval_rows) = label_rows(m, scheme)?;
    let labels = |j: usize| -> (BTreeSet<String>, BTreeSet<String>) {
        let collect = |rows: &Vec<(String, Vec<bool>)>| {
            rows.iter()
                .filter(|(_, row)| row[j])
                .map(|(name, _)| name.clone())
                .collect()
        };
        (collect(&point_rows), collect(&interval_rows))
    };

    let k = m.bound;
    let period: BigRational = m.delta[m.loop_idx..].iter().sum();
    let mut breakpoints = Vec::new();
    for (j, t) in times.iter().enumerate() {
        let (point, interval) = labels(j);
        breakpoints.push(Breakpoint {
            t: t.clone(),
            point,
            interval,
        });
    }
    let mut shift = BigRational::zero();
    loop {
        shift += &period;
        for j in m.loop_idx..=k {
            let (point, interval) = labels(j);
            breakpoints.push(Breakpoint {
                t: &times[j] + &shift,
                point,
                interval,
            });
        }
        if &times[k] + &shift >= *horizon {
            break;
        }
    }

    Ok(Signal {
        breakpoints,
        tail_start: m.loop_idx,
        period,
    }
    .validated()?)
}

/// Default unrolling horizon: prefix duration plus two periods plus the
/// largest constant of the input formula.
pub fn default_horizon(m: &DiscreteModel, largest_constant: u64) -> BigRational {
    let times = m.times();
    let period: BigRational = m.delta[m.loop_idx..].iter().sum();
    &times[m.loop_idx]
        + period * BigRational::from_integer(2.into())
        + BigRational::from_integer(largest_constant.into())
}

type Rows = Vec<(String, Vec<bool>)>;

/// Per-proposition truth rows feeding point and interval labels.
fn label_rows(m: &DiscreteModel, scheme: &AtomScheme) -> Result<(Rows, Rows), BuildError> {
    let fetch = |name: String| -> Result<(String, Vec<bool>), String> {
        match m.atoms.get(&name) {
            Some(row) => Ok((name, row.clone())),
            None => Err(name),
        }
    };
    let mut point = Vec::new();
    let mut interval = Vec::new();
    for (idx, prop) in scheme.props() {
        match scheme.mode() {
            Mode::Lcro => {
                let (_, row) = fetch(AtomScheme::up(*idx)).map_err(BuildError::SchemeMismatch)?;
                point.push((prop.clone(), row.clone()));
                interval.push((prop.clone(), row));
            }
            Mode::General => {
                let (_, row) = fetch(AtomScheme::fst(*idx)).map_err(BuildError::SchemeMismatch)?;
                point.push((prop.clone(), row));
                let (_, row) = fetch(AtomScheme::rest(*idx)).map_err(BuildError::SchemeMismatch)?;
                interval.push((prop.clone(), row));
            }
        }
    }
    Ok((point, interval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mitl_core::MitlFormula;
    use num::BigInt;
    use std::collections::BTreeMap;
    use translator::translate;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn scheme_for_p(mode: Mode) -> AtomScheme {
        translate(&MitlFormula::prop("p"), mode).unwrap().scheme
    }

    fn model(atoms: &[(&str, &[bool])], delta: &[(i64, i64)], loop_idx: usize) -> DiscreteModel {
        DiscreteModel {
            bound: delta.len() - 1,
            loop_idx,
            atoms: atoms
                .iter()
                .map(|(n, row)| (n.to_string(), row.to_vec()))
                .collect(),
            clocks: BTreeMap::new(),
            delta: delta.iter().map(|&(n, d)| rat(n, d)).collect(),
        }
    }

    #[test]
    fn interval_mode_reads_half_open_segments() {
        let m = model(&[("up_0", &[true, false])], &[(3, 2), (1, 1)], 1);
        let s = to_signal(&m, &scheme_for_p(Mode::Lcro), &rat(1, 1)).unwrap();
        assert!(s.holds_at("p", &rat(0, 1)));
        assert!(s.holds_at("p", &rat(1, 1)));
        assert!(!s.holds_at("p", &rat(3, 2)));
        assert!(!s.holds_at("p", &rat(100, 1)));
        assert_eq!(s.period, rat(1, 1));
        assert_eq!(s.tail_start, 1);
    }

    #[test]
    fn general_mode_renders_a_point_singularity() {
        let m = model(
            &[("fst_0", &[true, false]), ("rest_0", &[false, false])],
            &[(1, 1), (1, 1)],
            1,
        );
        let s = to_signal(&m, &scheme_for_p(Mode::General), &rat(1, 1)).unwrap();
        assert!(s.holds_at("p", &rat(0, 1)));
        assert!(!s.holds_at("p", &rat(1, 2)));
        assert!(!s.holds_at("p", &rat(1, 1)));
    }

    #[test]
    fn unrolls_whole_periods_to_the_horizon() {
        let m = model(&[("up_0", &[false, true])], &[(1, 1), (1, 1)], 1);
        let s = to_signal(&m, &scheme_for_p(Mode::Lcro), &rat(10, 1)).unwrap();
        let last = &s.breakpoints.last().unwrap().t;
        assert!(last >= &rat(10, 1));
        // Tail truth repeats: p on [1,2), [2,3), ... so p holds far out.
        assert!(s.holds_at("p", &rat(7, 2)));
        assert!(!s.holds_at("p", &rat(1, 2)));
    }

    #[test]
    fn rejects_nonpositive_horizon_and_missing_rows() {
        let m = model(&[("up_0", &[true, false])], &[(1, 1), (1, 1)], 1);
        assert!(matches!(
            to_signal(&m, &scheme_for_p(Mode::Lcro), &rat(0, 1)),
            Err(BuildError::BadHorizon(_))
        ));
        assert!(matches!(
            to_signal(&m, &scheme_for_p(Mode::General), &rat(1, 1)),
            Err(BuildError::SchemeMismatch(_))
        ));
    }

    #[test]
    fn default_horizon_covers_prefix_two_periods_and_constant() {
        let m = model(&[("up_0", &[true, false, true])], &[(1, 1), (2, 1), (1, 1)], 2);
        // Prefix ends at 3, period 1, constant 5: 3 + 2 + 5.
        assert_eq!(default_horizon(&m, 5), rat(10, 1));
    }
}
