//! The MITL formula tree over continuous time.

use crate::interval::TimeInterval;
use std::fmt;

/// An MITL formula; derived connectives are desugared into `Not`/`And` at parse time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MitlFormula {
    /// Atomic proposition.
    Prop(String),
    /// Negation.
    Not(Box<MitlFormula>),
    /// Binary conjunction.
    And(Box<MitlFormula>, Box<MitlFormula>),
    /// Timed until.
    Until(TimeInterval, Box<MitlFormula>, Box<MitlFormula>),
    /// Timed since.
    Since(TimeInterval, Box<MitlFormula>, Box<MitlFormula>),
    /// Timed eventually.
    Eventually(TimeInterval, Box<MitlFormula>),
    /// Timed globally.
    Globally(TimeInterval, Box<MitlFormula>),
    /// Timed past eventually.
    PastEventually(TimeInterval, Box<MitlFormula>),
}

impl MitlFormula {
    /// Atomic proposition.
    pub fn prop(name: &str) -> Self {
        MitlFormula::Prop(name.to_string())
    }

    /// Negation.
    pub fn not(f: MitlFormula) -> Self {
        MitlFormula::Not(Box::new(f))
    }

    /// Conjunction.
    pub fn and(a: MitlFormula, b: MitlFormula) -> Self {
        MitlFormula::And(Box::new(a), Box::new(b))
    }

    /// Disjunction, desugared into `Not`/`And`.
    pub fn or(a: MitlFormula, b: MitlFormula) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    /// Implication, desugared into `Not`/`And`.
    pub fn implies(a: MitlFormula, b: MitlFormula) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }

    /// Biconditional, desugared into `Not`/`And`.
    pub fn iff(a: MitlFormula, b: MitlFormula) -> Self {
        Self::and(
            Self::implies(a.clone(), b.clone()),
            Self::implies(b, a),
        )
    }

    /// Timed until.
    pub fn until(i: TimeInterval, a: MitlFormula, b: MitlFormula) -> Self {
        MitlFormula::Until(i, Box::new(a), Box::new(b))
    }

    /// Timed since.
    pub fn since(i: TimeInterval, a: MitlFormula, b: MitlFormula) -> Self {
        MitlFormula::Since(i, Box::new(a), Box::new(b))
    }

    /// Timed eventually.
    pub fn eventually(i: TimeInterval, f: MitlFormula) -> Self {
        MitlFormula::Eventually(i, Box::new(f))
    }

    /// Timed globally.
    pub fn globally(i: TimeInterval, f: MitlFormula) -> Self {
        MitlFormula::Globally(i, Box::new(f))
    }

    /// Timed past eventually.
    pub fn past_eventually(i: TimeInterval, f: MitlFormula) -> Self {
        MitlFormula::PastEventually(i, Box::new(f))
    }

    /// Nesting depth counting every node.
    pub fn depth(&self) -> usize {
        match self {
            MitlFormula::Prop(_) => 1,
            MitlFormula::Not(f)
            | MitlFormula::Eventually(_, f)
            | MitlFormula::Globally(_, f)
            | MitlFormula::PastEventually(_, f) => 1 + f.depth(),
            MitlFormula::And(a, b)
            | MitlFormula::Until(_, a, b)
            | MitlFormula::Since(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Largest finite interval endpoint occurring in the formula.
    pub fn max_endpoint(&self) -> u64 {
        fn interval_max(i: &TimeInterval) -> u64 {
            i.upper.unwrap_or(i.lower).max(i.lower)
        }
        match self {
            MitlFormula::Prop(_) => 0,
            MitlFormula::Not(f) => f.max_endpoint(),
            MitlFormula::And(a, b) => a.max_endpoint().max(b.max_endpoint()),
            MitlFormula::Eventually(i, f)
            | MitlFormula::Globally(i, f)
            | MitlFormula::PastEventually(i, f) => interval_max(i).max(f.max_endpoint()),
            MitlFormula::Until(i, a, b) | MitlFormula::Since(i, a, b) => interval_max(i)
                .max(a.max_endpoint())
                .max(b.max_endpoint()),
        }
    }
}

// Printing levels: atoms 4, unary 3, conjunction 2, temporal binary 1.
fn level(f: &MitlFormula) -> u8 {
    match f {
        MitlFormula::Prop(_) => 4,
        MitlFormula::Not(_)
        | MitlFormula::Eventually(..)
        | MitlFormula::Globally(..)
        | MitlFormula::PastEventually(..) => 3,
        MitlFormula::And(..) => 2,
        MitlFormula::Until(..) | MitlFormula::Since(..) => 1,
    }
}

fn write_at(f: &MitlFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let lv = level(f);
    if lv < min {
        write!(out, "(")?;
    }
    match f {
        MitlFormula::Prop(name) => write!(out, "{}", name)?,
        MitlFormula::Not(g) => {
            write!(out, "!")?;
            write_at(g, 3, out)?;
        }
        MitlFormula::Eventually(i, g) => {
            write!(out, "F{} ", i)?;
            write_at(g, 3, out)?;
        }
        MitlFormula::Globally(i, g) => {
            write!(out, "G{} ", i)?;
            write_at(g, 3, out)?;
        }
        MitlFormula::PastEventually(i, g) => {
            write!(out, "P{} ", i)?;
            write_at(g, 3, out)?;
        }
        MitlFormula::And(a, b) => {
            // Left-associative: nest further conjunctions on the left bare.
            write_at(a, 2, out)?;
            write!(out, " & ")?;
            write_at(b, 3, out)?;
        }
        MitlFormula::Until(i, a, b) => {
            write_at(a, 2, out)?;
            write!(out, " U{} ", i)?;
            write_at(b, 1, out)?;
        }
        MitlFormula::Since(i, a, b) => {
            write_at(a, 2, out)?;
            write!(out, " S{} ", i)?;
            write_at(b, 1, out)?;
        }
    }
    if lv < min {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for MitlFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_minimal_parentheses() {
        let i = TimeInterval::bounded(0, 2, true, false);
        let f = MitlFormula::and(
            MitlFormula::prop("p"),
            MitlFormula::not(MitlFormula::eventually(i, MitlFormula::prop("q"))),
        );
        assert_eq!(f.to_string(), "p & !F(0,2] q");
    }

    #[test]
    fn display_parenthesizes_right_nested_conjunction() {
        let f = MitlFormula::and(
            MitlFormula::prop("a"),
            MitlFormula::and(MitlFormula::prop("b"), MitlFormula::prop("c")),
        );
        assert_eq!(f.to_string(), "a & (b & c)");
    }

    #[test]
    fn display_nests_until_right_associatively() {
        let i = TimeInterval::zero_inf();
        let f = MitlFormula::until(
            i,
            MitlFormula::prop("a"),
            MitlFormula::until(i, MitlFormula::prop("b"), MitlFormula::prop("c")),
        );
        assert_eq!(f.to_string(), "a U(0,inf) b U(0,inf) c");
    }
}
