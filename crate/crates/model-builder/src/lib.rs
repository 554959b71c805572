//! Reconstruction of continuous signals from discrete lasso models, the
//! signal data type itself, and an independent validator for decoded
//! models.

pub mod builder;
pub mod signal;
pub mod validate;

pub use builder::{default_horizon, to_signal, BuildError};
pub use signal::{Breakpoint, Signal, SignalError};
pub use validate::{validate_discipline, validate_model, ValidateError};
