//! Atom naming scheme binding subformula indices to model propositions.

use mitl_core::{MitlFormula, Mode, SubformulaTable};

/// Names of the propositions a discrete model assigns per subformula.
///
/// Interval mode uses one atom per entry, true at positions whose whole
/// left-closed right-open interval satisfies the subformula. General mode
/// uses two: one for the sampled instant itself and one for the open
/// interval up to the next sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomScheme {
    mode: Mode,
    props: Vec<(usize, String)>,
}

impl AtomScheme {
    pub(crate) fn new(table: &SubformulaTable, mode: Mode) -> Self {
        let props = table
            .entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match &e.formula {
                MitlFormula::Prop(name) => Some((i, name.clone())),
                _ => None,
            })
            .collect();
        AtomScheme { mode, props }
    }

    /// Mode the scheme was built for.
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Signal propositions as `(entry index, name)` pairs, in entry order.
    pub fn props(&self) -> &[(usize, String)] {
        &self.props
    }

    /// Interval-truth atom of entry `i` (interval mode).
    pub fn up(i: usize) -> String {
        format!("up_{}", i)
    }

    /// Sampled-instant truth atom of entry `i` (general mode).
    pub fn fst(i: usize) -> String {
        format!("fst_{}", i)
    }

    /// Open-interval truth atom of entry `i` (general mode).
    pub fn rest(i: usize) -> String {
        format!("rest_{}", i)
    }

    /// Model atoms carrying entry `i`'s truth under this scheme.
    pub fn atoms_of(&self, i: usize) -> Vec<String> {
        match self.mode {
            Mode::Lcro => vec![Self::up(i)],
            Mode::General => vec![Self::fst(i), Self::rest(i)],
        }
    }
}
