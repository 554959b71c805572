//! Independent continuous-time semantics for formulas over signals,
//! used to cross-check the discretization pipeline end to end.

pub mod gen;
pub mod oracle;
pub mod upset;

pub use oracle::{eval_at, holds, rational, truth_set, Oracle, OracleError};
pub use upset::{Comp, UPSet, Window};
