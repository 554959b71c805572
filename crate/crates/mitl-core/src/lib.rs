//! Core MITL types: time intervals, formulas, parsing, normalization, and
//! the indexed subformula table used by the translation stages.

pub mod formula;
pub mod interval;
pub mod normalize;
pub mod parse;
pub mod subformulas;

pub use formula::MitlFormula;
pub use interval::{IntervalError, TimeInterval};
pub use normalize::{normalize, Mode, NormalizeError};
pub use parse::{parse_mitl, ParseError};
pub use subformulas::{subformulas, SubEntry, SubformulaTable};
