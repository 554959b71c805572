//! Explicit lasso models: solver output parsing and exact re-evaluation.

use std::collections::{BTreeMap, HashMap};

use cltloc_ir::eval::eval_lasso;
use cltloc_ir::{ClockId, CltlocFormula, Rel};
use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::encode::SmtScript;

/// A finite lasso model: positions `0..=bound`, the last looping back to
/// `loop_idx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteModel {
    /// Highest position index; the model has `bound + 1` positions.
    pub bound: usize,
    /// Loop target in `1..=bound`: the successor of the last position.
    pub loop_idx: usize,
    /// Atom truth rows, each `bound + 1` long.
    pub atoms: BTreeMap<String, Vec<bool>>,
    /// Clock value rows, each `bound + 1` long.
    pub clocks: BTreeMap<ClockId, Vec<BigRational>>,
    /// Time advance out of each position, `bound + 1` values.
    pub delta: Vec<BigRational>,
}

impl DiscreteModel {
    /// Number of positions.
    pub fn positions(&self) -> usize {
        self.bound + 1
    }

    /// Absolute timestamp of every position, starting at 0.
    pub fn times(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.positions());
        let mut now = BigRational::zero();
        for d in &self.delta {
            out.push(now.clone());
            now += d;
        }
        out
    }
}

/// Errors from reading a solver model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    /// A token that no value form starts with.
    #[error("unparsable model value near {0:?}")]
    BadValue(String),
    /// The model text ended inside a definition.
    #[error("model text ended unexpectedly")]
    Truncated,
    /// A declared numeric variable has no interpretation.
    #[error("model misses a value for {0}")]
    MissingValue(String),
    /// A variable has a value of the wrong sort.
    #[error("expected a {expected} value for {name}")]
    WrongSort {
        /// Variable name.
        name: String,
        /// Expected sort.
        expected: &'static str,
    },
    /// Not exactly one loop selector is true.
    #[error("{0} loop selectors are set")]
    LoopSelector(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Bool(bool),
    Num(BigRational),
}

/// Reads a solver model printed for `script` back into an explicit lasso.
///
/// Accepts the usual `get-model` shapes: an optional `sat` line, an
/// optional `model` keyword, `define-fun` entries with numerals, decimals,
/// fractions `(/ p q)`, and negations `(- v)`. Booleans the solver left
/// out default to false; numeric variables must all be present.
pub fn decode(script: &SmtScript, model_text: &str) -> Result<DiscreteModel, DecodeError> {
    let values = parse_model(model_text)?;
    let k = script.bound;
    let mut chosen: Vec<usize> = Vec::new();
    for j in 1..=k {
        if get_bool(&values, &format!("l_{}", j))? {
            chosen.push(j);
        }
    }
    if chosen.len() != 1 {
        return Err(DecodeError::LoopSelector(chosen.len()));
    }
    let mut atoms = BTreeMap::new();
    for (i, name) in script.atoms.iter().enumerate() {
        let row: Result<Vec<bool>, DecodeError> = (0..=k)
            .map(|t| get_bool(&values, &format!("a{}_{}", i, t)))
            .collect();
        atoms.insert(name.clone(), row?);
    }
    let mut clocks = BTreeMap::new();
    for (i, clock) in script.clocks.iter().enumerate() {
        let row: Result<Vec<BigRational>, DecodeError> = (0..=k)
            .map(|t| get_num(&values, &format!("c{}_{}", i, t)))
            .collect();
        clocks.insert(*clock, row?);
    }
    let delta: Result<Vec<BigRational>, DecodeError> = (0..=k)
        .map(|t| get_num(&values, &format!("d_{}", t)))
        .collect();
    Ok(DiscreteModel {
        bound: k,
        loop_idx: chosen[0],
        atoms,
        clocks,
        delta: delta?,
    })
}

fn get_bool(values: &HashMap<String, Value>, name: &str) -> Result<bool, DecodeError> {
    match values.get(name) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(Value::Num(_)) => Err(DecodeError::WrongSort {
            name: name.to_string(),
            expected: "boolean",
        }),
    }
}

fn get_num(values: &HashMap<String, Value>, name: &str) -> Result<BigRational, DecodeError> {
    match values.get(name) {
        None => Err(DecodeError::MissingValue(name.to_string())),
        Some(Value::Num(r)) => Ok(r.clone()),
        Some(Value::Bool(_)) => Err(DecodeError::WrongSort {
            name: name.to_string(),
            expected: "numeric",
        }),
    }
}

/// Splits model text into parentheses and bare tokens.
fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Collects `define-fun` interpretations from tokenized model text.
fn parse_model(text: &str) -> Result<HashMap<String, Value>, DecodeError> {
    let tokens = tokenize(text);
    let mut values = HashMap::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] != "define-fun" {
            i += 1;
            continue;
        }
        let name = tokens.get(i + 1).ok_or(DecodeError::Truncated)?.clone();
        // Skip the empty argument list and the result sort.
        if tokens.get(i + 2).map(String::as_str) != Some("(")
            || tokens.get(i + 3).map(String::as_str) != Some(")")
        {
            return Err(DecodeError::BadValue(name));
        }
        let mut pos = i + 5;
        let value = parse_value(&tokens, &mut pos)?;
        values.insert(name, value);
        i = pos;
    }
    Ok(values)
}

/// Parses one value s-expression starting at `*pos`, advancing past it.
fn parse_value(tokens: &[String], pos: &mut usize) -> Result<Value, DecodeError> {
    let tok = tokens.get(*pos).ok_or(DecodeError::Truncated)?.clone();
    *pos += 1;
    match tok.as_str() {
        "true" => Ok(Value::Bool(true)),
        "false" => Ok(Value::Bool(false)),
        "(" => {
            let op = tokens.get(*pos).ok_or(DecodeError::Truncated)?.clone();
            *pos += 1;
            let mut args = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                match parse_value(tokens, pos)? {
                    Value::Num(r) => args.push(r),
                    Value::Bool(_) => return Err(DecodeError::BadValue(op)),
                }
                if *pos >= tokens.len() {
                    return Err(DecodeError::Truncated);
                }
            }
            *pos += 1;
            let r = match (op.as_str(), args.len()) {
                ("-", 1) => -args[0].clone(),
                ("-", 2) => args[0].clone() - args[1].clone(),
                ("/", 2) => {
                    if args[1].is_zero() {
                        return Err(DecodeError::BadValue(op));
                    }
                    args[0].clone() / args[1].clone()
                }
                ("+", _) if !args.is_empty() => args.iter().sum(),
                ("*", _) if !args.is_empty() => args.iter().product(),
                _ => return Err(DecodeError::BadValue(op)),
            };
            Ok(Value::Num(r))
        }
        _ => parse_number(&tok).map(Value::Num),
    }
}

/// Parses a numeral or decimal literal.
fn parse_number(tok: &str) -> Result<BigRational, DecodeError> {
    let bad = || DecodeError::BadValue(tok.to_string());
    let (int_part, frac_part) = match tok.split_once('.') {
        None => (tok, ""),
        Some((a, b)) => (a, b),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let whole: BigInt = int_part.parse().map_err(|_| bad())?;
    let mut value = BigRational::from_integer(whole);
    if !frac_part.is_empty() {
        let digits: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        value += BigRational::new(digits, scale);
    }
    Ok(value)
}

/// Errors from evaluating a formula over a model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The formula mentions an atom the model lacks.
    #[error("model has no atom row for {0}")]
    UnknownAtom(String),
    /// The formula mentions a clock the model lacks.
    #[error("model has no clock row for {0}")]
    UnknownClock(String),
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
    /// The loop target is outside `1..=bound`.
    #[error("loop target {loop_idx} out of range for bound {bound}")]
    BadLoop {
        /// Stored loop target.
        loop_idx: usize,
        /// Stored bound.
        bound: usize,
    },
}

/// Truth of `f` at every position of the infinite unrolling of `model`.
///
/// This is an independent semantic check: it ignores how a model was
/// found and evaluates the formula directly over the lasso, so decoded
/// solver output can be cross-checked against the encoding.
pub fn eval_unrolled(f: &CltlocFormula, model: &DiscreteModel) -> Result<Vec<bool>, EvalError> {
    let n = model.positions();
    if model.loop_idx == 0 || model.loop_idx > model.bound {
        return Err(EvalError::BadLoop {
            loop_idx: model.loop_idx,
            bound: model.bound,
        });
    }
    if model.delta.len() != n {
        return Err(EvalError::RowLength {
            row: "delta".into(),
            expected: n,
            got: model.delta.len(),
        });
    }
    for (name, row) in &model.atoms {
        if row.len() != n {
            return Err(EvalError::RowLength {
                row: name.clone(),
                expected: n,
                got: row.len(),
            });
        }
    }
    for (clock, row) in &model.clocks {
        if row.len() != n {
            return Err(EvalError::RowLength {
                row: clock.to_string(),
                expected: n,
                got: row.len(),
            });
        }
    }
    check_leaves(f, model)?;
    let mut leaf = |g: &CltlocFormula, t: usize| match g {
        CltlocFormula::Atom(name) => model.atoms[name][t],
        CltlocFormula::Constraint(c) => {
            let v = &model.clocks[&c.clock][t];
            let bound = BigRational::from_integer(BigInt::from(c.constant));
            match c.rel {
                Rel::Lt => *v < bound,
                Rel::Le => *v <= bound,
                Rel::Eq => *v == bound,
                Rel::Ge => *v >= bound,
                Rel::Gt => *v > bound,
                Rel::Ne => *v != bound,
            }
        }
        CltlocFormula::ClockOrder {
            left,
            right,
            strict,
        } => {
            let l = &model.clocks[left][t];
            let r = &model.clocks[right][t];
            if *strict {
                l < r
            } else {
                l <= r
            }
        }
        _ => unreachable!("composite node reached the leaf evaluator"),
    };
    Ok(eval_lasso(f, n, model.loop_idx, &mut leaf))
}

/// Verifies every leaf of `f` has a row in `model`.
fn check_leaves(f: &CltlocFormula, model: &DiscreteModel) -> Result<(), EvalError> {
    use CltlocFormula as F;
    let check_clock = |c: &ClockId| {
        if model.clocks.contains_key(c) {
            Ok(())
        } else {
            Err(EvalError::UnknownClock(c.to_string()))
        }
    };
    match f {
        F::True => Ok(()),
        F::Atom(name) => {
            if model.atoms.contains_key(name) {
                Ok(())
            } else {
                Err(EvalError::UnknownAtom(name.clone()))
            }
        }
        F::Constraint(c) => check_clock(&c.clock),
        F::ClockOrder { left, right, .. } => {
            check_clock(left)?;
            check_clock(right)
        }
        F::Not(g) | F::Next(g) | F::Yesterday(g) => check_leaves(g, model),
        F::And(v) | F::Or(v) => v.iter().try_for_each(|g| check_leaves(g, model)),
        F::Until(a, b) | F::Since(a, b) | F::Release(a, b) | F::Trigger(a, b) => {
            check_leaves(a, model)?;
            check_leaves(b, model)
        }
    }
}
