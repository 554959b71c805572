//! Bounded satisfiability via lasso unrolling: turns a discrete clock
//! formula into an SMT-LIB2 QF_LRA script over finitely many positions
//! with a loop, and turns solver models back into explicit lasso models
//! that can be re-evaluated independently of the encoding.

pub mod encode;
pub mod model;

pub use encode::{encode, EncodeError, SmtScript};
pub use model::{decode, eval_unrolled, DecodeError, DiscreteModel, EvalError};
