//! Deduplicated, topologically ordered subformula table.

use crate::formula::MitlFormula;
use crate::interval::TimeInterval;
use std::collections::HashMap;

/// One table entry: the subformula, its children's indices, and its
/// auxiliary clock count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubEntry {
    /// The subformula itself.
    pub formula: MitlFormula,
    /// Indices of direct children; always below the entry's own index.
    pub children: Vec<usize>,
    /// Auxiliary clock count for bounded windows with a positive lower bound.
    pub d: u64,
}

/// All distinct subformulas in children-first order; the root is the last entry.
#[derive(Debug, Clone)]
pub struct SubformulaTable {
    /// Entries in topological (children before parents) order.
    pub entries: Vec<SubEntry>,
    /// Index of the whole formula.
    pub root: usize,
}

impl SubformulaTable {
    /// Looks up the index of a subformula.
    pub fn index_of(&self, f: &MitlFormula) -> Option<usize> {
        self.entries.iter().position(|e| &e.formula == f)
    }

    /// Total auxiliary clock count.
    pub fn total_aux(&self) -> u64 {
        self.entries.iter().map(|e| e.d).sum()
    }

    /// Total clock count: one pair per subformula plus the auxiliaries.
    pub fn total_clocks(&self) -> u64 {
        2 * self.entries.len() as u64 + self.total_aux()
    }
}

/// Auxiliary clock count for a window: `2 * ceil(b / (b - a))` when bounded
/// with `a > 0`, else 0.
fn aux_count(i: &TimeInterval) -> u64 {
    match i.upper {
        Some(b) if i.lower > 0 => {
            let width = b - i.lower;
            2 * b.div_ceil(width)
        }
        _ => 0,
    }
}

fn visit(f: &MitlFormula, seen: &mut HashMap<MitlFormula, usize>, out: &mut Vec<SubEntry>) -> usize {
    if let Some(&i) = seen.get(f) {
        return i;
    }
    let (children, d) = match f {
        MitlFormula::Prop(_) => (vec![], 0),
        MitlFormula::Not(g) => (vec![visit(g, seen, out)], 0),
        MitlFormula::And(a, b) => (vec![visit(a, seen, out), visit(b, seen, out)], 0),
        MitlFormula::Until(_, a, b) | MitlFormula::Since(_, a, b) => {
            (vec![visit(a, seen, out), visit(b, seen, out)], 0)
        }
        MitlFormula::Eventually(i, g) | MitlFormula::PastEventually(i, g) => {
            (vec![visit(g, seen, out)], aux_count(i))
        }
        MitlFormula::Globally(_, g) => (vec![visit(g, seen, out)], 0),
    };
    let idx = out.len();
    out.push(SubEntry {
        formula: f.clone(),
        children,
        d,
    });
    seen.insert(f.clone(), idx);
    idx
}

/// Builds the deduplicated subformula table of `f`.
pub fn subformulas(f: &MitlFormula) -> SubformulaTable {
    let mut seen = HashMap::new();
    let mut entries = Vec::new();
    let root = visit(f, &mut seen, &mut entries);
    SubformulaTable { entries, root }
}
