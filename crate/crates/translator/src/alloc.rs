//! Clock allocation: one pair per subformula plus auxiliary rotations for
//! bounded windows with a positive lower bound.

use cltloc_ir::{ClockId, ClockKind};
use mitl_core::{MitlFormula, Mode, SubformulaTable};

/// Clock layout over a subformula table.
///
/// Every entry owns a pair recording the elapsed time since its two most
/// recent truth switches; entries whose window needs to track switches
/// deeper than the pair own an auxiliary clock rotation on top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClockAllocation {
    aux: Vec<u64>,
}

impl ClockAllocation {
    /// Computes the layout for `table` under `mode`.
    ///
    /// Auxiliary counts follow the table except for unbounded past windows
    /// with a positive lower bound in general mode: those get one dedicated
    /// clock, because the operand's own pair can be re-reset by later
    /// events before the window's first start comes within reading range.
    pub(crate) fn new(table: &SubformulaTable, mode: Mode) -> Self {
        let aux = table
            .entries
            .iter()
            .map(|e| match &e.formula {
                MitlFormula::PastEventually(i, _)
                    if mode == Mode::General && i.lower > 0 && i.upper.is_none() =>
                {
                    1
                }
                _ => e.d,
            })
            .collect();
        ClockAllocation { aux }
    }

    /// Number of subformula entries covered.
    pub fn len(&self) -> usize {
        self.aux.len()
    }

    /// True when no entries are covered.
    pub fn is_empty(&self) -> bool {
        self.aux.is_empty()
    }

    /// First clock of entry `i`'s pair.
    pub fn z0(&self, i: usize) -> ClockId {
        ClockId {
            owner: i as u32,
            kind: ClockKind::Z0,
        }
    }

    /// Second clock of entry `i`'s pair.
    pub fn z1(&self, i: usize) -> ClockId {
        ClockId {
            owner: i as u32,
            kind: ClockKind::Z1,
        }
    }

    /// Auxiliary clock `j` of entry `i`.
    pub fn aux(&self, i: usize, j: u32) -> ClockId {
        debug_assert!((j as u64) < self.aux[i]);
        ClockId {
            owner: i as u32,
            kind: ClockKind::Aux(j),
        }
    }

    /// Number of auxiliary clocks owned by entry `i`.
    pub fn aux_count(&self, i: usize) -> u64 {
        self.aux[i]
    }

    /// Total clock count across all entries.
    pub fn total(&self) -> u64 {
        2 * self.aux.len() as u64 + self.aux.iter().sum::<u64>()
    }

    /// Every allocated clock, in entry order with the pair before the
    /// auxiliaries.
    pub fn all_clocks(&self) -> Vec<ClockId> {
        let mut out = Vec::new();
        for i in 0..self.aux.len() {
            out.push(self.z0(i));
            out.push(self.z1(i));
            for j in 0..self.aux[i] {
                out.push(self.aux(i, j as u32));
            }
        }
        out
    }
}
