//! Intermediate representation for discrete-time temporal formulas over
//! clocks: formula tree, negation normal form, constants, and a stable
//! pretty-printer used by golden tests.
//!
//! Printed forms: atoms and `true`/`false` bare; clock constraints as
//! `z0_3 >= 2`; every compound node parenthesized, e.g. `(a & b)`,
//! `!(a | b)`, `X (a U b)`, `Y p`, `(a R b)`, `(a T b)`.

pub mod eval;

use std::fmt;

/// Which clock of a subformula's allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClockKind {
    /// First clock of the pair.
    Z0,
    /// Second clock of the pair.
    Z1,
    /// Auxiliary clock `j` of a bounded-window owner.
    Aux(u32),
}

/// A clock, identified by its owning subformula index and kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockId {
    /// Index of the owning subformula in the subformula table.
    pub owner: u32,
    /// Which of the owner's clocks.
    pub kind: ClockKind,
}

impl fmt::Display for ClockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClockKind::Z0 => write!(f, "z0_{}", self.owner),
            ClockKind::Z1 => write!(f, "z1_{}", self.owner),
            ClockKind::Aux(j) => write!(f, "x{}_{}", j, self.owner),
        }
    }
}

/// Comparison relation of a clock constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl Rel {
    /// The relation holding exactly when `self` does not.
    pub fn negated(self) -> Rel {
        match self {
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Ne => "!=",
        };
        write!(f, "{}", s)
    }
}

/// A clock compared against a natural constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClockConstraint {
    /// The clock being tested.
    pub clock: ClockId,
    /// Comparison relation.
    pub rel: Rel,
    /// Natural constant.
    pub constant: u64,
}

impl fmt::Display for ClockConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.clock, self.rel, self.constant)
    }
}

/// A discrete-time temporal formula over atoms and clock constraints.
///
/// `And([])` is true and `Or([])` is false; `Yesterday` is false at the
/// first position; until/since are non-strict in the present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CltlocFormula {
    /// Constant truth.
    True,
    /// Named proposition.
    Atom(String),
    /// Clock-against-constant test.
    Constraint(ClockConstraint),
    /// Clock-against-clock order test, `left < right` or `left <= right`.
    ClockOrder {
        /// Smaller side.
        left: ClockId,
        /// Larger side.
        right: ClockId,
        /// True for strict order.
        strict: bool,
    },
    /// Negation.
    Not(Box<CltlocFormula>),
    /// N-ary conjunction.
    And(Vec<CltlocFormula>),
    /// N-ary disjunction.
    Or(Vec<CltlocFormula>),
    /// Strict next.
    Next(Box<CltlocFormula>),
    /// Strict previous; false at the origin.
    Yesterday(Box<CltlocFormula>),
    /// Non-strict until.
    Until(Box<CltlocFormula>, Box<CltlocFormula>),
    /// Non-strict since.
    Since(Box<CltlocFormula>, Box<CltlocFormula>),
    /// Dual of until.
    Release(Box<CltlocFormula>, Box<CltlocFormula>),
    /// Dual of since.
    Trigger(Box<CltlocFormula>, Box<CltlocFormula>),
}

use CltlocFormula as F;

/// Constant truth.
pub fn tt() -> CltlocFormula {
    F::True
}

/// Constant falsity, represented as the empty disjunction.
pub fn ff() -> CltlocFormula {
    F::Or(vec![])
}

/// Named proposition.
pub fn atom(name: impl Into<String>) -> CltlocFormula {
    F::Atom(name.into())
}

/// Clock constraint leaf.
pub fn constraint(clock: ClockId, rel: Rel, constant: u64) -> CltlocFormula {
    F::Constraint(ClockConstraint {
        clock,
        rel,
        constant,
    })
}

/// Negation.
pub fn not(f: CltlocFormula) -> CltlocFormula {
    F::Not(Box::new(f))
}

/// Conjunction; a singleton list collapses to its element.
pub fn and(mut v: Vec<CltlocFormula>) -> CltlocFormula {
    if v.len() == 1 {
        v.pop().unwrap()
    } else {
        F::And(v)
    }
}

/// Disjunction; a singleton list collapses to its element.
pub fn or(mut v: Vec<CltlocFormula>) -> CltlocFormula {
    if v.len() == 1 {
        v.pop().unwrap()
    } else {
        F::Or(v)
    }
}

/// Material implication.
pub fn implies(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    or(vec![not(a), b])
}

/// Biconditional, expanded into two implications.
pub fn iff(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    and(vec![implies(a.clone(), b.clone()), implies(b, a)])
}

/// Strict next.
pub fn next(f: CltlocFormula) -> CltlocFormula {
    F::Next(Box::new(f))
}

/// Strict previous.
pub fn yesterday(f: CltlocFormula) -> CltlocFormula {
    F::Yesterday(Box::new(f))
}

/// Non-strict until.
pub fn until(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    F::Until(Box::new(a), Box::new(b))
}

/// Non-strict since.
pub fn since(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    F::Since(Box::new(a), Box::new(b))
}

/// Dual of until.
pub fn release(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    F::Release(Box::new(a), Box::new(b))
}

/// Dual of since.
pub fn trigger(a: CltlocFormula, b: CltlocFormula) -> CltlocFormula {
    F::Trigger(Box::new(a), Box::new(b))
}

/// Derived always: holds at every position from here on.
pub fn globally(f: CltlocFormula) -> CltlocFormula {
    release(ff(), f)
}

/// Derived eventually: holds at some position from here on.
pub fn eventually(f: CltlocFormula) -> CltlocFormula {
    until(tt(), f)
}

/// Derived historically: holds at every position up to here.
pub fn historically(f: CltlocFormula) -> CltlocFormula {
    trigger(ff(), f)
}

/// Derived once: holds at some position up to here.
pub fn once(f: CltlocFormula) -> CltlocFormula {
    since(tt(), f)
}

/// The origin marker: true exactly at the first position.
pub fn origin() -> CltlocFormula {
    not(yesterday(tt()))
}

/// Negation normal form: negation pushed down to atoms, constraint
/// relations flipped, duals swapped. The only surviving negations sit
/// immediately above atoms or form the origin idiom `!(Y true)`.
pub fn nnf(f: &CltlocFormula) -> CltlocFormula {
    fn go(f: &CltlocFormula, pos: bool) -> CltlocFormula {
        match f {
            F::True => {
                if pos {
                    F::True
                } else {
                    ff()
                }
            }
            F::Atom(_) => {
                if pos {
                    f.clone()
                } else {
                    not(f.clone())
                }
            }
            F::Constraint(c) => {
                if pos {
                    f.clone()
                } else {
                    F::Constraint(ClockConstraint {
                        clock: c.clock,
                        rel: c.rel.negated(),
                        constant: c.constant,
                    })
                }
            }
            F::ClockOrder {
                left,
                right,
                strict,
            } => {
                if pos {
                    f.clone()
                } else {
                    // not(l < r) is r <= l; not(l <= r) is r < l.
                    F::ClockOrder {
                        left: *right,
                        right: *left,
                        strict: !*strict,
                    }
                }
            }
            F::Not(g) => go(g, !pos),
            F::And(v) => {
                let kids = v.iter().map(|g| go(g, pos)).collect();
                if pos {
                    F::And(kids)
                } else {
                    F::Or(kids)
                }
            }
            F::Or(v) => {
                let kids = v.iter().map(|g| go(g, pos)).collect();
                if pos {
                    F::Or(kids)
                } else {
                    F::And(kids)
                }
            }
            F::Next(g) => next(go(g, pos)),
            F::Yesterday(g) => {
                if pos {
                    yesterday(go(g, true))
                } else if **g == F::True {
                    // The origin idiom stays as written.
                    origin()
                } else {
                    // A previous position either does not exist or refutes g.
                    or(vec![origin(), yesterday(go(g, false))])
                }
            }
            F::Until(a, b) => {
                if pos {
                    until(go(a, true), go(b, true))
                } else {
                    release(go(a, false), go(b, false))
                }
            }
            F::Release(a, b) => {
                if pos {
                    release(go(a, true), go(b, true))
                } else {
                    until(go(a, false), go(b, false))
                }
            }
            F::Since(a, b) => {
                if pos {
                    since(go(a, true), go(b, true))
                } else {
                    trigger(go(a, false), go(b, false))
                }
            }
            F::Trigger(a, b) => {
                if pos {
                    trigger(go(a, true), go(b, true))
                } else {
                    since(go(a, false), go(b, false))
                }
            }
        }
    }
    go(f, true)
}

/// Largest constant compared against any clock; 0 when none occur.
pub fn max_constant(f: &CltlocFormula) -> u64 {
    match f {
        F::True | F::Atom(_) | F::ClockOrder { .. } => 0,
        F::Constraint(c) => c.constant,
        F::Not(g) | F::Next(g) | F::Yesterday(g) => max_constant(g),
        F::And(v) | F::Or(v) => v.iter().map(max_constant).max().unwrap_or(0),
        F::Until(a, b) | F::Since(a, b) | F::Release(a, b) | F::Trigger(a, b) => {
            max_constant(a).max(max_constant(b))
        }
    }
}

impl fmt::Display for CltlocFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F::True => write!(out, "true"),
            F::Atom(name) => write!(out, "{}", name),
            F::Constraint(c) => write!(out, "{}", c),
            F::ClockOrder {
                left,
                right,
                strict,
            } => write!(out, "{} {} {}", left, if *strict { "<" } else { "<=" }, right),
            F::Not(g) => write!(out, "!{}", wrap(g)),
            F::And(v) => {
                if v.is_empty() {
                    write!(out, "true")
                } else {
                    write!(out, "(")?;
                    for (i, g) in v.iter().enumerate() {
                        if i > 0 {
                            write!(out, " & ")?;
                        }
                        write!(out, "{}", g)?;
                    }
                    write!(out, ")")
                }
            }
            F::Or(v) => {
                if v.is_empty() {
                    write!(out, "false")
                } else {
                    write!(out, "(")?;
                    for (i, g) in v.iter().enumerate() {
                        if i > 0 {
                            write!(out, " | ")?;
                        }
                        write!(out, "{}", g)?;
                    }
                    write!(out, ")")
                }
            }
            F::Next(g) => write!(out, "X {}", wrap(g)),
            F::Yesterday(g) => write!(out, "Y {}", wrap(g)),
            F::Until(a, b) => write!(out, "({} U {})", a, b),
            F::Since(a, b) => write!(out, "({} S {})", a, b),
            F::Release(a, b) => write!(out, "({} R {})", a, b),
            F::Trigger(a, b) => write!(out, "({} T {})", a, b),
        }
    }
}

struct Wrapped<'a>(&'a CltlocFormula);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Constraints contain spaces, so guard them with parentheses too.
        if matches!(self.0, F::True | F::Atom(_)) {
            write!(out, "{}", self.0)
        } else if matches!(
            self.0,
            F::And(_)
                | F::Or(_)
                | F::Until(..)
                | F::Since(..)
                | F::Release(..)
                | F::Trigger(..)
        ) {
            // These already print their own parentheses (nonempty lists).
            match self.0 {
                F::And(v) | F::Or(v) if v.is_empty() => write!(out, "{}", self.0),
                _ => write!(out, "{}", self.0),
            }
        } else {
            write!(out, "({})", self.0)
        }
    }
}

fn wrap(f: &CltlocFormula) -> Wrapped<'_> {
    Wrapped(f)
}
