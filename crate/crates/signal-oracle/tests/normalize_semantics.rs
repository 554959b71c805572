//! Normalization must not change where a formula holds, sampled over the
//! signal/formula classes where the window decompositions are exact: timed
//! until/since with a positive lower bound keeps its meaning only when the
//! hold operand never goes false at a single isolated instant, so those
//! shapes are paired with lcro signals and boolean hold operands, while
//! zero-lower windows are exercised on fully general signals.

use mitl_core::{normalize, Mode};
use signal_oracle::gen::{
    random_instant, random_shaped_formula, random_signal, rng_from_seed, UntilShape,
};
use signal_oracle::Oracle;

fn run_mode(mode: Mode, seed: u64, lcro_signals: bool, shape: UntilShape) {
    let mut rng = rng_from_seed(seed);
    let atoms = ["p", "q"];
    let mut checked = 0usize;
    for _ in 0..20 {
        let sig = random_signal(&mut rng, &atoms, lcro_signals);
        for _ in 0..4 {
            let original = random_shaped_formula(&mut rng, &atoms, 3, 4, mode, shape);
            let rewritten = normalize(&original, mode).unwrap();
            let mut oracle = Oracle::new(&sig, &rewritten);
            for _ in 0..6 {
                let t = random_instant(&mut rng, &sig);
                assert_eq!(
                    oracle.eval_at(&original, &t).unwrap(),
                    oracle.eval_at(&rewritten, &t).unwrap(),
                    "{} and its normal form {} differ at {}",
                    original,
                    rewritten,
                    t
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 480, "only {} instances checked", checked);
}

#[test]
fn normalization_preserves_truth_in_general_mode_on_gapfree_signals() {
    run_mode(Mode::General, 71, true, UntilShape::AtomicHold);
}

#[test]
fn normalization_preserves_truth_for_zero_lower_windows_on_general_signals() {
    run_mode(Mode::General, 79, false, UntilShape::ZeroLower);
}

#[test]
fn normalization_preserves_truth_in_lcro_mode() {
    run_mode(Mode::Lcro, 73, true, UntilShape::Free);
}
