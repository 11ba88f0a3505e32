//! Exact and asymptotic enumeration of sparse digraphs with all in- and
//! out-degrees positive, together with a provably uniform pairing-model
//! sampler and Monte Carlo estimators for the structural events the
//! counting formulas describe.

pub mod asym;
pub mod error;
pub mod exact;
pub mod golden;
pub mod graph;
pub mod mc;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
