//! Bounded satisfiability checker for metric temporal formulas over
//! continuous time: parse, normalize, translate to clock-temporal form,
//! encode as a lasso search, run an external solver, decode and validate
//! the model, reconstruct a witness signal, and cross-check it against
//! the continuous-time semantics.

mod report;

use bsc_encoder::{decode, encode, eval_unrolled, DiscreteModel, SmtScript};
use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use cltloc_ir::{max_constant, nnf, CltlocFormula};
use mitl_core::{normalize, parse_mitl, Mode};
use model_builder::signal::parse_rational;
use model_builder::{default_horizon, to_signal, validate_discipline, validate_model};
use num::BigRational;
use report::{CheckReport, OracleCheck, Verdict};
use signal_oracle::holds;
use solver_driver::{resolve_solver, SolverConfig, SolverOutcome};
use std::fmt::Display;
use std::fs;
use std::time::{Duration, Instant};
use translator::translate;

/// Signal class searched for a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Left-closed right-open piecewise-constant signals.
    Lcro,
    /// Arbitrary finitely-variable signals.
    General,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lcro => Mode::Lcro,
            ModeArg::General => Mode::General,
        }
    }
}

/// Bounded model search for metric temporal formulas over continuous time.
#[derive(Debug, Parser)]
#[command(name = "mitl-check", version)]
struct Args {
    /// Formula file; a string that is no readable file is parsed directly.
    formula: Option<String>,

    /// Inline formula text.
    #[arg(short = 'e', long = "expr", value_name = "EXPR", conflicts_with = "formula")]
    expr: Option<String>,

    /// Signal class to search.
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    mode: ModeArg,

    /// Number of discrete positions beyond the origin; at least 1.
    #[arg(long, value_name = "K", default_value_t = 10)]
    bound: usize,

    /// Sweep bounds up to this one, stopping at the first model.
    #[arg(long, value_name = "K")]
    bound_max: Option<usize>,

    /// Solver command; `{script}` stands for the script path.
    #[arg(long, value_name = "CMD")]
    solver: Option<String>,

    /// Solver budget in seconds per attempt; 0 waits forever.
    #[arg(long, value_name = "SECS", default_value_t = 600)]
    timeout: u64,

    /// Write the solver script here.
    #[arg(long, value_name = "PATH")]
    emit_smt: Option<String>,

    /// Write the discrete clock-temporal translation here.
    #[arg(long, value_name = "PATH")]
    emit_cltloc: Option<String>,

    /// Write the witness signal as JSON here.
    #[arg(long, value_name = "PATH")]
    model_json: Option<String>,

    /// Unroll the witness signal at least to this time.
    #[arg(long, value_name = "T", value_parser = parse_horizon)]
    horizon: Option<BigRational>,

    /// Skip the continuous-semantics check of the witness.
    #[arg(long)]
    no_oracle: bool,

    /// Also print the report as one JSON line.
    #[arg(long)]
    json: bool,
}

fn parse_horizon(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let report = run_check(&args);
    print!("{}", report.render());
    if args.json {
        println!("{}", report.to_json());
    }
    std::process::exit(report.exit_code());
}

/// Runs the whole pipeline, turning any stage failure into an error report.
fn run_check(args: &Args) -> CheckReport {
    let mode = args.mode.into();
    let mut stages = Vec::new();
    let mut report = match pipeline(args, mode, &mut stages) {
        Ok(report) => report,
        Err((stage, message)) => CheckReport {
            verdict: Verdict::Error,
            bound: args.bound,
            mode,
            stages: Vec::new(),
            witness: None,
            oracle: None,
            detail: Some(format!("{stage}: {message}")),
        },
    };
    report.stages = stages;
    report
}

type StageFailure = (&'static str, String);

/// Times one pipeline stage and tags its error with the stage name.
fn timed<T, E: Display>(
    stages: &mut Vec<(String, Duration)>,
    name: &'static str,
    f: impl FnOnce() -> Result<T, E>,
) -> Result<T, StageFailure> {
    let start = Instant::now();
    let out = f();
    stages.push((name.to_string(), start.elapsed()));
    out.map_err(|e| (name, e.to_string()))
}

fn pipeline(
    args: &Args,
    mode: Mode,
    stages: &mut Vec<(String, Duration)>,
) -> Result<CheckReport, StageFailure> {
    if args.bound == 0 {
        return Err(("usage", "bound must be at least 1".into()));
    }
    let last = args.bound_max.unwrap_or(args.bound);
    if last < args.bound {
        return Err(("usage", format!("bound-max {last} is below bound {}", args.bound)));
    }

    let text = timed(stages, "input", || read_input(args))?;
    let parsed = timed(stages, "parse", || parse_mitl(&text))?;
    let normalized = timed(stages, "normalize", || normalize(&parsed, mode))?;
    let tr = timed(stages, "translate", || translate(&normalized, mode))?;
    if let Some(path) = &args.emit_cltloc {
        timed(stages, "emit", || fs::write(path, format!("{}\n", tr.formula)))?;
    }
    let limit = max_constant(&nnf(&tr.formula));

    let mut sat: Option<(SmtScript, String)> = None;
    let mut bound = args.bound;
    for k in args.bound..=last {
        bound = k;
        let script = timed(stages, "encode", || encode(&tr.formula, k))?;
        if let Some(path) = &args.emit_smt {
            timed(stages, "emit", || fs::write(path, &script.text))?;
        }
        match timed(stages, "solve", || solve(args, &script.text))? {
            SolverOutcome::Sat(model_text) => {
                sat = Some((script, model_text));
                break;
            }
            SolverOutcome::NoModelAtBound => {}
            SolverOutcome::Unknown(reason) => {
                let detail = if reason.is_empty() { None } else { Some(reason) };
                return Ok(settle(Verdict::Unknown, bound, mode, detail));
            }
            SolverOutcome::TimedOut => {
                let detail = Some(format!("solver budget of {}s exhausted", args.timeout));
                return Ok(settle(Verdict::Timeout, bound, mode, detail));
            }
            SolverOutcome::SolverError(diag) => return Err(("solve", diag)),
        }
    }
    let Some((script, model_text)) = sat else {
        return Ok(settle(Verdict::NoModelAtBound, bound, mode, None));
    };

    let model = timed(stages, "decode", || decode(&script, &model_text))?;
    timed(stages, "validate", || check_model(&tr.formula, &model, limit))?;
    let horizon = match &args.horizon {
        Some(t) => t.clone(),
        None => default_horizon(&model, normalized.max_endpoint()),
    };
    let signal = timed(stages, "build", || to_signal(&model, &tr.scheme, &horizon))?;
    if let Some(path) = &args.model_json {
        timed(stages, "emit", || -> Result<(), String> {
            let text = serde_json::to_string_pretty(&signal.to_json()).map_err(|e| e.to_string())?;
            fs::write(path, text + "\n").map_err(|e| e.to_string())
        })?;
    }
    let oracle = if args.no_oracle {
        OracleCheck::Skipped
    } else if timed(stages, "oracle", || holds(&signal, &parsed))? {
        OracleCheck::Confirmed
    } else {
        OracleCheck::Rejected
    };
    Ok(CheckReport {
        verdict: Verdict::Sat,
        bound,
        mode,
        stages: Vec::new(),
        witness: Some(signal),
        oracle: Some(oracle),
        detail: None,
    })
}

/// A verdict without a witness; stage timings are filled in afterwards.
fn settle(verdict: Verdict, bound: usize, mode: Mode, detail: Option<String>) -> CheckReport {
    CheckReport {
        verdict,
        bound,
        mode,
        stages: Vec::new(),
        witness: None,
        oracle: None,
        detail,
    }
}

/// The formula text: a readable file, else the argument itself when it
/// parses, else the inline expression.
fn read_input(args: &Args) -> Result<String, String> {
    match (&args.formula, &args.expr) {
        (Some(arg), None) => match fs::read_to_string(arg) {
            Ok(text) => Ok(text),
            Err(e) if parse_mitl(arg).is_ok() => {
                let _ = e;
                Ok(arg.clone())
            }
            Err(e) => Err(format!("{arg}: {e}")),
        },
        (None, Some(expr)) => Ok(expr.clone()),
        (None, None) => Err("no formula given: pass a file path or -e EXPR".into()),
        (Some(_), Some(_)) => Err("pass either a file path or -e EXPR, not both".into()),
    }
}

fn solve(args: &Args, script: &str) -> Result<SolverOutcome, String> {
    let command = resolve_solver(args.solver.as_deref()).ok_or_else(|| {
        "no solver found: pass --solver, set MITL_BSC_SOLVER, or put z3, cvc5, \
         mathsat, or yices-smt2 on PATH"
            .to_string()
    })?;
    let mut config = SolverConfig::new(command);
    config.timeout_secs = args.timeout;
    solver_driver::run(script, &config).map_err(|e| e.to_string())
}

/// Discrete-side witness checks: structural invariants, reset discipline,
/// and an independent evaluation of the formula over the lasso.
fn check_model(formula: &CltlocFormula, m: &DiscreteModel, limit: u64) -> Result<(), String> {
    validate_model(m, limit).map_err(|e| e.to_string())?;
    validate_discipline(m).map_err(|e| e.to_string())?;
    let truth = eval_unrolled(formula, m).map_err(|e| e.to_string())?;
    if !truth[0] {
        return Err("decoded model fails the discrete formula at the origin".into());
    }
    Ok(())
}
