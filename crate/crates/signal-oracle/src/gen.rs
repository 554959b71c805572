//! Seeded random formulas and signals for property and acceptance tests.

use std::collections::BTreeSet;

use mitl_core::{normalize, MitlFormula, Mode, TimeInterval};
use model_builder::{Breakpoint, Signal};
use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::upset::{q, Q};

/// A deterministic generator from a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape restriction on timed until/since occurrences in generated
/// formulas. The window decomposition of a timed until or since is exact
/// only when a positive lower bound is excluded from the window and the
/// hold operand never changes value at a single isolated instant, so
/// equivalence tests sample from `AtomicHold` (boolean hold operands and
/// open positive lower bounds, exact on l.c.r.o. signals) or `ZeroLower`
/// (windows touching zero, exact on every signal).
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum UntilShape {
    /// No restriction.
    Free,
    /// Timed until/since have boolean hold operands and, when the lower
    /// bound is positive, it is excluded.
    AtomicHold,
    /// Timed until/since windows have lower bound zero.
    ZeroLower,
}

/// A random formula that the given mode accepts, depth-bounded and with
/// window endpoints at most `max_const`.
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    atoms: &[&str],
    depth: usize,
    max_const: u64,
    mode: Mode,
) -> MitlFormula {
    random_shaped_formula(rng, atoms, depth, max_const, mode, UntilShape::Free)
}

/// A random mode-accepted formula whose timed until/since occurrences obey
/// the given shape restriction.
pub fn random_shaped_formula(
    rng: &mut ChaCha8Rng,
    atoms: &[&str],
    depth: usize,
    max_const: u64,
    mode: Mode,
    shape: UntilShape,
) -> MitlFormula {
    for _ in 0..500 {
        let f = gen_node(rng, atoms, depth, max_const, mode, shape);
        if normalize(&f, mode).is_ok() {
            return f;
        }
    }
    panic!("formula generation failed to satisfy mode constraints");
}

/// A random boolean combination of atoms.
pub fn random_boolean_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> MitlFormula {
    use MitlFormula as F;
    if depth == 0 {
        return F::prop(atoms[rng.random_range(0..atoms.len())]);
    }
    let d = depth - 1;
    match rng.random_range(0..4) {
        0 => F::prop(atoms[rng.random_range(0..atoms.len())]),
        1 => F::not(random_boolean_formula(rng, atoms, d)),
        2 => F::and(
            random_boolean_formula(rng, atoms, d),
            random_boolean_formula(rng, atoms, d),
        ),
        _ => F::or(
            random_boolean_formula(rng, atoms, d),
            random_boolean_formula(rng, atoms, d),
        ),
    }
}

fn gen_node(
    rng: &mut ChaCha8Rng,
    atoms: &[&str],
    depth: usize,
    max_const: u64,
    mode: Mode,
    shape: UntilShape,
) -> MitlFormula {
    use MitlFormula as F;
    if depth == 0 {
        return F::prop(atoms[rng.random_range(0..atoms.len())]);
    }
    let lcro = mode == Mode::Lcro;
    let kinds = if lcro { 8 } else { 10 };
    let d = depth - 1;
    let hold = |rng: &mut ChaCha8Rng| match shape {
        UntilShape::AtomicHold => random_boolean_formula(rng, atoms, d.min(2)),
        _ => gen_node(rng, atoms, d, max_const, mode, shape),
    };
    match rng.random_range(0..kinds) {
        0 => F::prop(atoms[rng.random_range(0..atoms.len())]),
        1 => F::not(gen_node(rng, atoms, d, max_const, mode, shape)),
        2 => F::and(
            gen_node(rng, atoms, d, max_const, mode, shape),
            gen_node(rng, atoms, d, max_const, mode, shape),
        ),
        3 => F::or(
            gen_node(rng, atoms, d, max_const, mode, shape),
            gen_node(rng, atoms, d, max_const, mode, shape),
        ),
        4 => F::eventually(
            gen_window(rng, max_const, lcro, false, shape),
            gen_node(rng, atoms, d, max_const, mode, shape),
        ),
        5 => F::globally(
            gen_window(rng, max_const, lcro, false, shape),
            gen_node(rng, atoms, d, max_const, mode, shape),
        ),
        6 | 7 => {
            let h = hold(rng);
            F::until(
                gen_window(rng, max_const, lcro, true, shape),
                h,
                gen_node(rng, atoms, d, max_const, mode, shape),
            )
        }
        8 => F::past_eventually(
            gen_window(rng, max_const, false, false, shape),
            gen_node(rng, atoms, d, max_const, mode, shape),
        ),
        _ => {
            let h = hold(rng);
            F::since(
                gen_window(rng, max_const, false, true, shape),
                h,
                gen_node(rng, atoms, d, max_const, mode, shape),
            )
        }
    }
}

/// A random operator window; lcro candidates avoid shapes the mode is
/// known to reject so the retry loop converges quickly.
fn gen_window(
    rng: &mut ChaCha8Rng,
    max_const: u64,
    lcro: bool,
    until_like: bool,
    shape: UntilShape,
) -> TimeInterval {
    let max_c = max_const.max(1);
    let a = if until_like && shape == UntilShape::ZeroLower {
        0
    } else {
        rng.random_range(0..max_c)
    };
    let mut lower_open = rng.random_bool(0.5);
    if until_like && a > 0 && (lcro || shape == UntilShape::AtomicHold) {
        lower_open = true;
    }
    if rng.random_bool(0.3) {
        TimeInterval::unbounded(a, lower_open)
    } else {
        let b = a + rng.random_range(1..=max_c - a);
        let upper_open = if lcro { false } else { rng.random_bool(0.5) };
        TimeInterval::bounded(a, b, lower_open, upper_open)
    }
}

/// A random signal over `atoms` on a half-integer grid, with an explicit
/// two-period tail so periodicity checks pass by construction. With
/// `lcro`, every breakpoint's point labels equal its interval labels.
pub fn random_signal(rng: &mut ChaCha8Rng, atoms: &[&str], lcro: bool) -> Signal {
    let mut times: Vec<Q> = vec![Q::zero()];
    let prefix_segs = rng.random_range(1..=4);
    for _ in 0..prefix_segs {
        let step = q(rng.random_range(1..=4), 2);
        let next = times.last().unwrap() + step;
        times.push(next);
    }
    let tail_idx = times.len() - 1;
    let tail_time = times[tail_idx].clone();

    let pat_segs: usize = rng.random_range(1..=3);
    let mut offsets: Vec<Q> = Vec::new();
    let mut acc = Q::zero();
    for _ in 0..pat_segs {
        offsets.push(acc.clone());
        acc += q(rng.random_range(1..=3), 2);
    }
    let delta = acc;

    let rand_labels = |rng: &mut ChaCha8Rng| -> (BTreeSet<String>, BTreeSet<String>) {
        let point: BTreeSet<String> = atoms
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .map(|s| s.to_string())
            .collect();
        let interval = if lcro {
            point.clone()
        } else {
            atoms
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .map(|s| s.to_string())
                .collect()
        };
        (point, interval)
    };

    let mut breakpoints: Vec<Breakpoint> = Vec::new();
    for t in times.iter().take(tail_idx) {
        let (point, interval) = rand_labels(rng);
        breakpoints.push(Breakpoint {
            t: t.clone(),
            point,
            interval,
        });
    }
    let pat_labels: Vec<(BTreeSet<String>, BTreeSet<String>)> =
        (0..pat_segs).map(|_| rand_labels(rng)).collect();
    for rep in 0..2u32 {
        let base = &tail_time + &delta * Q::from(BigInt::from(rep));
        for (j, off) in offsets.iter().enumerate() {
            breakpoints.push(Breakpoint {
                t: &base + off,
                point: pat_labels[j].0.clone(),
                interval: pat_labels[j].1.clone(),
            });
        }
    }
    let two_delta = &delta + &delta;
    breakpoints.push(Breakpoint {
        t: &tail_time + &two_delta,
        point: pat_labels[0].0.clone(),
        interval: pat_labels[0].1.clone(),
    });

    Signal {
        breakpoints,
        tail_start: tail_idx,
        period: delta,
    }
    .validated()
    .expect("generated signal is structurally valid")
}

/// A random quarter-grid instant within the signal's explicit part plus
/// one period.
pub fn random_instant(rng: &mut ChaCha8Rng, sig: &Signal) -> Q {
    let hi = &sig.breakpoints.last().unwrap().t + &sig.period;
    let quarters: i64 = (hi * Q::from(BigInt::from(4)))
        .to_integer()
        .try_into()
        .unwrap_or(64);
    q(rng.random_range(0..=quarters.max(1)), 4)
}
