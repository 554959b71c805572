//! Translation of normalized metric formulas into discrete clock-temporal
//! form. Each subformula gets model atoms tracking its truth around the
//! sampled positions and a clock pair marking its truth switches; timed
//! windows tie switch positions to clock readings, so a discrete model
//! exists exactly when a continuous signal of the mode's class satisfies
//! the formula.

mod alloc;
mod atoms;
mod general;
mod lcro;

pub use alloc::ClockAllocation;
pub use atoms::AtomScheme;

use cltloc_ir::CltlocFormula;
use mitl_core::{subformulas, MitlFormula, Mode, SubformulaTable};
use thiserror::Error;

/// Errors from translation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    /// The input contains a shape outside the mode's normal form.
    #[error("subformula '{subformula}' is outside the {mode} normal form; normalize first")]
    UnsupportedShape {
        /// Display form of the offending subformula.
        subformula: String,
        /// Mode the translation ran in.
        mode: Mode,
    },
}

/// A translated formula together with its clock layout and atom naming.
#[derive(Debug, Clone)]
pub struct TranslationResult {
    /// The discrete clock-temporal formula.
    pub formula: CltlocFormula,
    /// Subformula table the layout is indexed by; the root entry carries
    /// the whole input formula.
    pub table: SubformulaTable,
    /// Clock layout.
    pub allocation: ClockAllocation,
    /// Atom naming scheme.
    pub scheme: AtomScheme,
}

/// Translates a normalized formula for `mode`.
///
/// The input must already be in the mode's normal form; other shapes are
/// rejected rather than rewritten here.
pub fn translate(f: &MitlFormula, mode: Mode) -> Result<TranslationResult, TranslationError> {
    let table = subformulas(f);
    let allocation = ClockAllocation::new(&table, mode);
    let scheme = AtomScheme::new(&table, mode);
    let formula = match mode {
        Mode::Lcro => lcro::build(&table, &allocation)?,
        Mode::General => general::build(&table, &allocation)?,
    };
    Ok(TranslationResult {
        formula,
        table,
        allocation,
        scheme,
    })
}

fn unsupported(f: &MitlFormula, mode: Mode) -> TranslationError {
    TranslationError::UnsupportedShape {
        subformula: f.to_string(),
        mode,
    }
}
