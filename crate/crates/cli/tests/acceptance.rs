//! Acceptance gate: one test per shipped criterion, each printing a
//! `criterion N (...): PASS/FAIL/SKIPPED` line. Run with
//! `cargo test -p mitl-check --test acceptance -- --nocapture` to see every
//! line; budgets and tolerances are pinned as constants below.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use bsc_encoder::{decode, encode, eval_unrolled};
use cltloc_ir::{max_constant, nnf};
use mitl_core::{normalize, parse_mitl, MitlFormula, Mode, TimeInterval};
use model_builder::{
    default_horizon, to_signal, validate_discipline, validate_model, Breakpoint, Signal,
};
use num::{BigInt, BigRational, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use signal_oracle::gen::{
    random_formula, random_instant, random_shaped_formula, random_signal, rng_from_seed,
    UntilShape,
};
use signal_oracle::upset::q;
use signal_oracle::{eval_at, holds, truth_set};
use solver_driver::{resolve_solver, run, SolverConfig, SolverOutcome};
use translator::translate;

/// Wall budget for the base spike-train reproduction.
const SPIKE_BUDGET: Duration = Duration::from_secs(900);
/// Wall budget for the spike train with the nearby-q constraint.
const SPIKE_NEAR_Q_BUDGET: Duration = Duration::from_secs(1800);
/// Wall budget for the stretch variant with sparse q occurrences.
const SPIKE_SPARSE_Q_BUDGET: Duration = Duration::from_secs(7200);
/// Per-run budget for propositional no-model detection.
const NO_MODEL_BUDGET: Duration = Duration::from_secs(10);

/// p recurs with period 100 and holds in isolated points only.
const SPIKES: &str =
    "G[0,inf)((G(0,100) !p -> G(100,200) !p) & (p -> F(0,200) p)) & p & G(0,100) !p";

/// Additionally, q holds within 1 time unit of every later p.
fn spikes_near_q() -> String {
    format!("{SPIKES} & G(0,inf)(p -> F(0,1) q | P(0,1) q)")
}

/// Additionally, q occurrences are isolated and at least 100 apart.
fn spikes_sparse_q() -> String {
    format!("{} & G(0,inf)(q -> G(0,100) !q)", spikes_near_q())
}

fn gate(n: u32, name: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("criterion {n} ({name}): PASS {detail}"),
        Err(why) => {
            println!("criterion {n} ({name}): FAIL {why}");
            panic!("criterion {n} ({name}) failed: {why}");
        }
    }
}

fn run_binary(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mitl-check"))
        .args(args)
        .output()
        .expect("check binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    (out.status.code().unwrap_or(-1), stdout, start.elapsed())
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// Shared in-process pipeline used by the random-formula and clock-discipline
// suites: translate, encode, solve, then put every sat outcome through the
// model validators, the discrete re-evaluation, and the continuous oracle.

enum PipeVerdict {
    Sat,
    NoModel,
}

fn pipeline(
    f: &MitlFormula,
    mode: Mode,
    bound: usize,
    solver: &[String],
) -> Result<PipeVerdict, String> {
    let norm = normalize(f, mode).map_err(|e| format!("normalize: {e}"))?;
    let tr = translate(&norm, mode).map_err(|e| format!("translate: {e}"))?;
    let limit = max_constant(&nnf(&tr.formula));
    let script = encode(&tr.formula, bound).map_err(|e| format!("encode: {e}"))?;
    let mut config = SolverConfig::new(solver.to_vec());
    config.timeout_secs = 120;
    let model_text = match run(&script.text, &config).map_err(|e| format!("solver: {e}"))? {
        SolverOutcome::Sat(text) => text,
        SolverOutcome::NoModelAtBound => return Ok(PipeVerdict::NoModel),
        SolverOutcome::Unknown(why) => return Err(format!("solver answered unknown: {why}")),
        SolverOutcome::TimedOut => return Err("solver timed out".into()),
        SolverOutcome::SolverError(why) => return Err(format!("solver failed: {why}")),
    };
    let m = decode(&script, &model_text).map_err(|e| format!("decode: {e}"))?;
    validate_model(&m, limit).map_err(|e| format!("model validation: {e}"))?;
    validate_discipline(&m).map_err(|e| format!("clock discipline: {e}"))?;
    let truth = eval_unrolled(&tr.formula, &m).map_err(|e| format!("re-evaluation: {e}"))?;
    if !truth[0] {
        return Err("decoded model fails the discrete formula at the origin".into());
    }
    let horizon = default_horizon(&m, norm.max_endpoint());
    let sig = to_signal(&m, &tr.scheme, &horizon).map_err(|e| format!("signal: {e}"))?;
    match holds(&sig, f) {
        Ok(true) => Ok(PipeVerdict::Sat),
        Ok(false) => Err(format!(
            "oracle rejected a sat witness for {f} (mode {mode:?}, bound {bound})"
        )),
        Err(e) => Err(format!("oracle: {e}")),
    }
}

fn solver_command() -> Vec<String> {
    resolve_solver(None).expect("a solver is reachable for acceptance runs")
}

// Criterion 1: the spike train is reproduced at bound 10 and the witness has
// p exactly at multiples of 100, in isolated points.

#[test]
fn spike_train_is_reproduced_at_bound_ten() {
    gate(1, "spike train at bound 10", spike_train_check());
}

fn spike_train_check() -> Result<String, String> {
    let dir = tempfile::tempdir().expect("tempdir");
    let json_path = dir.path().join("witness.json");
    let json_arg = json_path.to_string_lossy().into_owned();
    let (code, stdout, elapsed) = run_binary(&[
        "--mode",
        "general",
        "--bound",
        "10",
        "--timeout",
        "840",
        "--model-json",
        &json_arg,
        "-e",
        SPIKES,
    ]);
    if code != 0 || !stdout.contains("verdict: sat") {
        return Err(format!("exit {code}, output:\n{stdout}"));
    }
    if !stdout.contains("oracle: confirmed") {
        return Err(format!("witness not oracle-confirmed:\n{stdout}"));
    }
    if elapsed > SPIKE_BUDGET {
        return Err(format!("took {elapsed:?}, budget {SPIKE_BUDGET:?}"));
    }
    let text = std::fs::read_to_string(&json_path).map_err(|e| format!("witness json: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("witness json: {e}"))?;
    let sig = Signal::from_json(&value).map_err(|e| format!("witness json: {e}"))?;
    check_spike_shape(&sig)?;
    let reconfirmed = holds(&sig, &parse_mitl(SPIKES).unwrap())
        .map_err(|e| format!("oracle re-check: {e}"))?;
    if !reconfirmed {
        return Err("oracle re-check of the stored witness failed".into());
    }
    Ok(format!(
        "sat, oracle-confirmed, p exactly at multiples of 100 up to {}, {elapsed:?}",
        sig.breakpoints.last().unwrap().t
    ))
}

/// p holds at every multiple of 100 in the covered span, in points only.
fn check_spike_shape(sig: &Signal) -> Result<(), String> {
    let hundred = rational(100);
    for bp in &sig.breakpoints {
        if bp.interval.contains("p") {
            return Err(format!("p holds on an open interval after t={}", bp.t));
        }
        let multiple = (&bp.t / &hundred).is_integer();
        if bp.point.contains("p") && !multiple {
            return Err(format!("p holds at t={}, not a multiple of 100", bp.t));
        }
    }
    let last = &sig.breakpoints.last().unwrap().t;
    let mut n = 0i64;
    loop {
        let t = rational(n) * &hundred;
        if &t > last {
            break;
        }
        let bp = sig.breakpoints.iter().find(|bp| bp.t == t);
        match bp {
            Some(bp) if bp.point.contains("p") => {}
            _ => return Err(format!("p missing at t={t}")),
        }
        n += 1;
    }
    Ok(())
}

// Criterion 2: adding the nearby-q constraint stays sat at bound 10 and every
// later p occurrence has a q within 1 time unit.

#[test]
fn spike_train_with_nearby_q_is_reproduced() {
    gate(2, "spike train with nearby q", spike_near_q_check());
}

fn spike_near_q_check() -> Result<String, String> {
    let dir = tempfile::tempdir().expect("tempdir");
    let json_path = dir.path().join("witness.json");
    let json_arg = json_path.to_string_lossy().into_owned();
    let formula = spikes_near_q();
    let (code, stdout, elapsed) = run_binary(&[
        "--mode",
        "general",
        "--bound",
        "10",
        "--timeout",
        "1700",
        "--model-json",
        &json_arg,
        "-e",
        &formula,
    ]);
    if code != 0 || !stdout.contains("verdict: sat") {
        return Err(format!("exit {code}, output:\n{stdout}"));
    }
    if !stdout.contains("oracle: confirmed") {
        return Err(format!("witness not oracle-confirmed:\n{stdout}"));
    }
    if elapsed > SPIKE_NEAR_Q_BUDGET {
        return Err(format!("took {elapsed:?}, budget {SPIKE_NEAR_Q_BUDGET:?}"));
    }
    let text = std::fs::read_to_string(&json_path).map_err(|e| format!("witness json: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("witness json: {e}"))?;
    let sig = Signal::from_json(&value).map_err(|e| format!("witness json: {e}"))?;
    let near = holds(&sig, &parse_mitl("G(0,inf)(p -> F(0,1) q | P(0,1) q)").unwrap())
        .map_err(|e| format!("oracle: {e}"))?;
    if !near {
        return Err("a p occurrence after 0 has no q within 1 time unit".into());
    }
    let checked = check_q_near_every_p(&sig)?;
    Ok(format!(
        "sat, oracle-confirmed, q within 1 of all {checked} sampled p instants, {elapsed:?}"
    ))
}

/// Samples every p-true component of the witness and checks q within 1.
fn check_q_near_every_p(sig: &Signal) -> Result<usize, String> {
    let p_comps = truth_set(sig, &MitlFormula::prop("p"))
        .map_err(|e| format!("oracle: {e}"))?
        .materialize(&sig.breakpoints.last().unwrap().t);
    let near_q = parse_mitl("q | F(0,1) q | P(0,1) q").unwrap();
    let mut checked = 0usize;
    for c in &p_comps {
        let mut samples = vec![];
        if c.is_point() {
            samples.push(c.lo.clone());
        } else {
            let quarter = (&c.hi - &c.lo) / rational(4);
            samples.push(if c.lo_closed {
                c.lo.clone()
            } else {
                &c.lo + &quarter
            });
            samples.push((&c.lo + &c.hi) / rational(2));
            samples.push(&c.hi - &quarter);
        }
        for t in samples {
            if t.is_zero() {
                continue;
            }
            if !eval_at(sig, &near_q, &t).map_err(|e| format!("oracle: {e}"))? {
                return Err(format!("p at t={t} has no q within 1 time unit"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

// Criterion 3: the sparse-q variant at bound 20 is a stretch goal, gated
// behind an environment flag so the default run stays within minutes.

#[test]
fn spike_train_with_sparse_q_stretch_goal() {
    if std::env::var("MITL_ACCEPT_STRETCH").as_deref() != Ok("1") {
        println!(
            "criterion 3 (spike train with sparse q): SKIPPED \
             (stretch goal; set MITL_ACCEPT_STRETCH=1 to run, budget {SPIKE_SPARSE_Q_BUDGET:?})"
        );
        return;
    }
    gate(3, "spike train with sparse q", spike_sparse_q_check());
}

fn spike_sparse_q_check() -> Result<String, String> {
    let formula = spikes_sparse_q();
    let (code, stdout, elapsed) = run_binary(&[
        "--mode",
        "general",
        "--bound",
        "20",
        "--timeout",
        "7000",
        "-e",
        &formula,
    ]);
    if code != 0 || !stdout.contains("verdict: sat") {
        return Err(format!("exit {code} after {elapsed:?}, output:\n{stdout}"));
    }
    if !stdout.contains("oracle: confirmed") {
        return Err(format!("witness not oracle-confirmed:\n{stdout}"));
    }
    if elapsed > SPIKE_SPARSE_Q_BUDGET {
        return Err(format!("took {elapsed:?}, budget {SPIKE_SPARSE_Q_BUDGET:?}"));
    }
    Ok(format!("sat, oracle-confirmed, {elapsed:?}"))
}

// Criterion 4: random mode-accepted formulas round-trip soundly; every sat
// witness is confirmed by the oracle at the origin and no validator fires.
// Timed until/since windows are drawn from the shapes whose decomposition is
// exact for the mode's signal class, so confirmed disagreements cannot stem
// from the known rewrite weakness exercised separately by criterion 5.

#[test]
fn random_formulas_round_trip_soundly() {
    gate(4, "random formula soundness", random_soundness_check());
}

fn random_soundness_check() -> Result<String, String> {
    let solver = solver_command();
    let mut rng = rng_from_seed(0xACCE_9701);
    let mut sat = 0usize;
    let mut no_model = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let draws: Vec<(Mode, UntilShape)> = std::iter::repeat((Mode::General, UntilShape::ZeroLower))
        .take(60)
        .chain(std::iter::repeat((Mode::Lcro, UntilShape::AtomicHold)).take(60))
        .collect();
    for (i, (mode, shape)) in draws.iter().enumerate() {
        let f = random_shaped_formula(&mut rng, &["p", "q"], 3, 5, *mode, *shape);
        match pipeline(&f, *mode, 3, &solver) {
            Ok(PipeVerdict::Sat) => sat += 1,
            Ok(PipeVerdict::NoModel) => no_model += 1,
            Err(why) => failures.push(format!("draw {i} ({mode:?}) {f}: {why}")),
        }
    }
    if !failures.is_empty() {
        return Err(format!(
            "{} of {} draws failed; first: {}",
            failures.len(),
            draws.len(),
            failures[0]
        ));
    }
    Ok(format!(
        "{sat} sat (all oracle-confirmed and validator-clean), {no_model} no-model, \
         0 oracle rejections"
    ))
}

// Criterion 5: the guard-window rewrite of the timed until, checked case by
// case against the direct semantics at random (signal, instant) pairs.

const REWRITE_PAIRS_PER_CASE: usize = 200;

fn untimed_until(phi: MitlFormula, psi: MitlFormula) -> MitlFormula {
    MitlFormula::until(TimeInterval::zero_inf(), phi, psi)
}

/// Rewrite for windows attaining a positive lower bound: guard the untimed
/// until on [0,a), then require a witness in the window when it is bounded.
fn attained_lower_rewrite(
    a: u64,
    upper: Option<(u64, bool)>,
    phi: &MitlFormula,
    psi: &MitlFormula,
) -> MitlFormula {
    let guard = MitlFormula::globally(
        TimeInterval::bounded(0, a, false, true),
        untimed_until(phi.clone(), psi.clone()),
    );
    match upper {
        Some((b, upper_open)) => MitlFormula::and(
            guard,
            MitlFormula::eventually(TimeInterval::bounded(a, b, false, upper_open), psi.clone()),
        ),
        None => guard,
    }
}

/// Rewrite for windows excluding a positive lower bound: the guard closes
/// at a instead.
fn excluded_lower_rewrite(
    a: u64,
    upper: Option<(u64, bool)>,
    phi: &MitlFormula,
    psi: &MitlFormula,
) -> MitlFormula {
    let guard = MitlFormula::globally(
        TimeInterval::bounded(0, a, false, false),
        untimed_until(phi.clone(), psi.clone()),
    );
    match upper {
        Some((b, upper_open)) => MitlFormula::and(
            guard,
            MitlFormula::eventually(TimeInterval::bounded(a, b, true, upper_open), psi.clone()),
        ),
        None => guard,
    }
}

/// Rewrite for windows with lower bound zero: drop the bound from the until
/// and add a witness requirement for the original window.
fn zero_lower_rewrite(
    lower_open: bool,
    b: u64,
    upper_open: bool,
    phi: &MitlFormula,
    psi: &MitlFormula,
) -> MitlFormula {
    MitlFormula::and(
        MitlFormula::until(
            TimeInterval::unbounded(0, lower_open),
            phi.clone(),
            psi.clone(),
        ),
        MitlFormula::eventually(
            TimeInterval::bounded(0, b, lower_open, upper_open),
            psi.clone(),
        ),
    )
}

fn random_window(rng: &mut ChaCha8Rng) -> (u64, Option<(u64, bool)>) {
    let a = rng.random_range(1..=3);
    if rng.random_bool(0.3) {
        (a, None)
    } else {
        (a, Some((a + rng.random_range(1..=2), rng.random_bool(0.5))))
    }
}

fn compare_rewrite(
    sig: &Signal,
    t: &BigRational,
    lhs: &MitlFormula,
    rhs: &MitlFormula,
) -> Result<(), String> {
    let direct = eval_at(sig, lhs, t).map_err(|e| format!("oracle on {lhs}: {e}"))?;
    let rewritten = eval_at(sig, rhs, t).map_err(|e| format!("oracle on {rhs}: {e}"))?;
    if direct != rewritten {
        return Err(format!(
            "disagreement at t={t}: {lhs} is {direct} but {rhs} is {rewritten}; signal {}",
            serde_json::to_string(&sig.to_json()).unwrap()
        ));
    }
    Ok(())
}

/// A signal where every instant below an attained lower bound has a local
/// witness inside the guard window, yet no single witness serves the original
/// window: q on [0,1) and [3/2,8/5), p on [0,6/5). At t=0 the window [1,2)
/// forces its witness into [3/2,8/5) where p has already expired, so
/// p U[1,2) q is false while its guard-window rewrite is true.
fn attained_lower_counterexample() -> (Signal, MitlFormula, MitlFormula) {
    let both = |names: &[&str]| -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    };
    let bp = |t: BigRational, names: &[&str]| Breakpoint {
        t,
        point: both(names),
        interval: both(names),
    };
    let sig = Signal {
        breakpoints: vec![
            bp(q(0, 1), &["p", "q"]),
            bp(q(1, 1), &["p"]),
            bp(q(6, 5), &[]),
            bp(q(3, 2), &["q"]),
            bp(q(8, 5), &[]),
            bp(q(13, 5), &[]),
        ],
        tail_start: 4,
        period: q(1, 1),
    }
    .validated()
    .expect("counterexample signal is structurally valid");
    let p = MitlFormula::prop("p");
    let qf = MitlFormula::prop("q");
    let lhs = MitlFormula::until(TimeInterval::bounded(1, 2, false, true), p.clone(), qf.clone());
    let rhs = attained_lower_rewrite(1, Some((2, true)), &p, &qf);
    (sig, lhs, rhs)
}

#[test]
fn attained_lower_bound_rewrite_agrees() {
    gate(5, "timed-until rewrite, attained lower bound", {
        let mut result = Ok(format!("{REWRITE_PAIRS_PER_CASE} random pairs + 1 pinned, exact"));
        let (sig, lhs, rhs) = attained_lower_counterexample();
        if let Err(why) = compare_rewrite(&sig, &BigRational::zero(), &lhs, &rhs) {
            result = Err(why);
        }
        let mut rng = rng_from_seed(0xACCE_9705);
        for _ in 0..REWRITE_PAIRS_PER_CASE {
            let sig = random_signal(&mut rng, &["p", "q"], true);
            let phi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
            let psi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
            let (a, upper) = random_window(&mut rng);
            let interval = match upper {
                Some((b, uo)) => TimeInterval::bounded(a, b, false, uo),
                None => TimeInterval::unbounded(a, false),
            };
            let lhs = MitlFormula::until(interval, phi.clone(), psi.clone());
            let rhs = attained_lower_rewrite(a, upper, &phi, &psi);
            let t = random_instant(&mut rng, &sig);
            if let Err(why) = compare_rewrite(&sig, &t, &lhs, &rhs) {
                if result.is_ok() {
                    result = Err(why);
                }
            }
        }
        result
    });
}

#[test]
fn excluded_lower_bound_rewrite_agrees() {
    gate(5, "timed-until rewrite, excluded lower bound", {
        let mut result = Ok(format!("{REWRITE_PAIRS_PER_CASE} random pairs, exact"));
        let mut rng = rng_from_seed(0xACCE_9706);
        for _ in 0..REWRITE_PAIRS_PER_CASE {
            let sig = random_signal(&mut rng, &["p", "q"], true);
            let phi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
            let psi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
            let (a, upper) = random_window(&mut rng);
            let interval = match upper {
                Some((b, uo)) => TimeInterval::bounded(a, b, true, uo),
                None => TimeInterval::unbounded(a, true),
            };
            let lhs = MitlFormula::until(interval, phi.clone(), psi.clone());
            let rhs = excluded_lower_rewrite(a, upper, &phi, &psi);
            let t = random_instant(&mut rng, &sig);
            if let Err(why) = compare_rewrite(&sig, &t, &lhs, &rhs) {
                result = Err(why);
                break;
            }
        }
        result
    });
}

#[test]
fn zero_lower_bound_rewrite_agrees() {
    gate(5, "timed-until rewrite, zero lower bound", {
        let mut result = Ok(format!(
            "{REWRITE_PAIRS_PER_CASE} random pairs on mixed signal classes, exact"
        ));
        let mut rng = rng_from_seed(0xACCE_9707);
        for i in 0..REWRITE_PAIRS_PER_CASE {
            let lcro = i % 2 == 0;
            let sig = random_signal(&mut rng, &["p", "q"], lcro);
            let phi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::General);
            let psi = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::General);
            let lower_open = rng.random_bool(0.5);
            let upper_open = rng.random_bool(0.5);
            let b = rng.random_range(1..=4);
            let lhs = MitlFormula::until(
                TimeInterval::bounded(0, b, lower_open, upper_open),
                phi.clone(),
                psi.clone(),
            );
            let rhs = zero_lower_rewrite(lower_open, b, upper_open, &phi, &psi);
            let t = random_instant(&mut rng, &sig);
            if let Err(why) = compare_rewrite(&sig, &t, &lhs, &rhs) {
                result = Err(why);
                break;
            }
        }
        result
    });
}

// Criterion 6: clock totals follow the pair-plus-window law, recomputed here
// by an independent walk over the normalized tree.

/// Two clocks per distinct subformula, plus 2*ceil(b/(b-a)) for every
/// distinct bounded eventually window with a positive lower bound.
fn law_clock_total(f: &MitlFormula) -> u64 {
    let mut seen: HashSet<&MitlFormula> = HashSet::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        if !seen.insert(g) {
            continue;
        }
        match g {
            MitlFormula::Prop(_) => {}
            MitlFormula::Not(x) => stack.push(x),
            MitlFormula::And(x, y) => {
                stack.push(x);
                stack.push(y);
            }
            MitlFormula::Until(_, x, y) | MitlFormula::Since(_, x, y) => {
                stack.push(x);
                stack.push(y);
            }
            MitlFormula::Eventually(_, x)
            | MitlFormula::Globally(_, x)
            | MitlFormula::PastEventually(_, x) => stack.push(x),
        }
    }
    let mut total = 2 * seen.len() as u64;
    for g in &seen {
        if let MitlFormula::Eventually(i, _) | MitlFormula::PastEventually(i, _) = g {
            if i.lower > 0 {
                if let Some(b) = i.upper {
                    total += 2 * b.div_ceil(b - i.lower);
                }
            }
        }
    }
    total
}

#[test]
fn clock_totals_follow_the_pair_plus_window_law() {
    gate(6, "clock-count law", clock_law_check());
}

fn clock_law_check() -> Result<String, String> {
    let fixture = [
        "F(2,3] p",
        "p",
        "!p",
        "p & q",
        "p | q",
        "p U(0,inf) q",
        "F(0,5] p",
        "F[0,5] p",
        "G(1,3] p",
        "G(0,4] p",
        "F(1,4] (p & q)",
        "F(2,4] p | F(0,1] q",
        "F(2,3] p & F(2,3] p",
        "(p U(0,inf) q) U(0,inf) (q U(0,inf) p)",
        "F(3,5] F(1,2] p",
        "F[2,3] p",
        "F(0,inf) p",
        "F[1,inf) p",
        "G[0,inf)(p -> F(0,2] q)",
        "F[1,2] (p | q)",
    ];
    for src in fixture {
        let parsed = parse_mitl(src).map_err(|e| format!("{src}: {e}"))?;
        let norm = normalize(&parsed, Mode::Lcro).map_err(|e| format!("{src}: {e}"))?;
        let tr = translate(&norm, Mode::Lcro).map_err(|e| format!("{src}: {e}"))?;
        let expected = law_clock_total(&norm);
        let got = tr.allocation.total();
        if got != expected {
            return Err(format!(
                "{src}: allocation has {got} clocks, the law gives {expected}"
            ));
        }
    }
    let pinned = parse_mitl("F(2,3] p").unwrap();
    let tr = translate(&normalize(&pinned, Mode::Lcro).unwrap(), Mode::Lcro).unwrap();
    if tr.allocation.total() != 10 {
        return Err(format!(
            "F(2,3] p allocates {} clocks, expected exactly 10",
            tr.allocation.total()
        ));
    }
    Ok(format!(
        "{} formulas match 2*subformulas + window terms; F(2,3] p = 10 clocks",
        fixture.len()
    ))
}

// Criterion 7: every decoded sat model passes the independent validators:
// positive time steps, progression or reset, pair alternation, circular
// auxiliary resets, origin resets. The binary enforces the same validators
// before reporting sat (a failure exits with the stage error code), so the
// spike-train suites are covered by their exit status; this suite re-runs a
// mixed corpus in-process where the validator calls are explicit.

#[test]
fn decoded_models_satisfy_the_clock_discipline() {
    gate(7, "decoded-model clock discipline", clock_discipline_check());
}

fn clock_discipline_check() -> Result<String, String> {
    let solver = solver_command();
    let corpus: [(&str, Mode, usize); 10] = [
        ("F(0,2] p", Mode::General, 3),
        ("F(0,2] p", Mode::Lcro, 3),
        ("p U(0,inf) q", Mode::General, 2),
        ("p & F(0,1] !p", Mode::General, 3),
        ("F(0,3] P(0,1] q", Mode::General, 4),
        ("G(0,2] p & F(0,4] q", Mode::Lcro, 4),
        ("F(1,2] p", Mode::Lcro, 4),
        ("F[1,3] q", Mode::General, 4),
        ("q | P(0,2] q", Mode::General, 3),
        ("p S(0,inf) q", Mode::General, 3),
    ];
    let mut sat = 0usize;
    for (src, mode, bound) in corpus {
        let f = parse_mitl(src).map_err(|e| format!("{src}: {e}"))?;
        match pipeline(&f, mode, bound, &solver) {
            Ok(PipeVerdict::Sat) => sat += 1,
            Ok(PipeVerdict::NoModel) => {
                return Err(format!("{src} found no model at bound {bound}"))
            }
            Err(why) => return Err(format!("{src}: {why}")),
        }
    }
    Ok(format!(
        "{sat} sat models validated in-process; binary runs validate before reporting sat"
    ))
}

// Criterion 8: propositional contradictions are reported as no-model at every
// bound, quickly.

#[test]
fn propositional_contradictions_report_no_model_quickly() {
    gate(8, "no-model detection", no_model_check());
}

fn no_model_check() -> Result<String, String> {
    let formulas = ["p & !p", "F(0,5] p & !(F(0,5] p)"];
    let bounds = ["1", "5", "10"];
    let mut runs = 0usize;
    for f in formulas {
        for k in &bounds {
            let (code, stdout, elapsed) = run_binary(&["--bound", k, "-e", f]);
            if code != 1 || !stdout.contains("no-model-at-bound") {
                return Err(format!("{f} at bound {k}: exit {code}, output:\n{stdout}"));
            }
            if elapsed > NO_MODEL_BUDGET {
                return Err(format!(
                    "{f} at bound {k} took {elapsed:?}, budget {NO_MODEL_BUDGET:?}"
                ));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, all no-model within {NO_MODEL_BUDGET:?}"))
}

// Criterion 9: on left-closed right-open signals, truth signals of the
// fragment's operators keep that shape, and bounded-eventually truth episodes
// last at least the window width.

#[test]
fn truth_signal_shapes_stay_left_closed_and_wide() {
    gate(9, "truth-signal shape laws", truth_shape_check());
}

fn truth_shape_check() -> Result<String, String> {
    let mut rng = rng_from_seed(0xACCE_9709);
    let mut lcro_comps = 0usize;
    let mut episodes = 0usize;
    for _ in 0..50 {
        let sig = random_signal(&mut rng, &["p", "q"], true);
        let f = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
        let g = random_formula(&mut rng, &["p", "q"], 2, 3, Mode::Lcro);
        let a = rng.random_range(0..=3);
        let b = a + rng.random_range(1..=2);
        let lower_open = if a == 0 { true } else { rng.random_bool(0.5) };
        let shaped = [
            MitlFormula::not(f.clone()),
            MitlFormula::and(f.clone(), g.clone()),
            untimed_until(f.clone(), g.clone()),
            MitlFormula::eventually(TimeInterval::bounded(a, b, lower_open, false), f.clone()),
            MitlFormula::eventually(TimeInterval::unbounded(a, lower_open), f.clone()),
            MitlFormula::eventually(TimeInterval::bounded(0, b, false, false), f.clone()),
        ];
        let span = sig.breakpoints.last().unwrap().t.clone();
        for s in &shaped {
            let comps = truth_set(&sig, s)
                .map_err(|e| format!("oracle on {s}: {e}"))?
                .materialize(&span);
            for c in &comps {
                if !c.lo_closed || c.hi_closed {
                    return Err(format!(
                        "truth of {s} has a component not left-closed right-open: \
                         lo={} ({}), hi={} ({}); signal {}",
                        c.lo,
                        if c.lo_closed { "closed" } else { "open" },
                        c.hi,
                        if c.hi_closed { "closed" } else { "open" },
                        serde_json::to_string(&sig.to_json()).unwrap()
                    ));
                }
                lcro_comps += 1;
            }
        }

        let wa = rng.random_range(0..=3);
        let wb = wa + rng.random_range(1..=2);
        let theta = MitlFormula::eventually(
            TimeInterval::bounded(wa, wb, rng.random_bool(0.5), rng.random_bool(0.5)),
            g.clone(),
        );
        let wide_span = sig.tail_time() + &sig.period * rational(4);
        let min_width = rational((wb - wa) as i64);
        let comps = truth_set(&sig, &theta)
            .map_err(|e| format!("oracle on {theta}: {e}"))?
            .materialize(&wide_span);
        for c in &comps {
            if c.lo.is_zero() || c.hi == wide_span {
                continue;
            }
            if &c.hi - &c.lo < min_width {
                return Err(format!(
                    "truth episode of {theta} on [{}, {}) is shorter than the window \
                     width {min_width}; signal {}",
                    c.lo,
                    c.hi,
                    serde_json::to_string(&sig.to_json()).unwrap()
                ));
            }
            episodes += 1;
        }
    }
    Ok(format!(
        "{lcro_comps} components left-closed right-open, {episodes} episodes at least \
         window-width long, over 50 signals"
    ))
}
