//! Internal zonotopal algebras of totally unimodular vector arrangements,
//! computed as orbit harmonics rings over the rationals and the integers.

pub mod error;
pub mod format;
pub mod funcspace;
pub mod arrangement;
pub mod graph;
pub mod harmonics;
pub mod ideals;
pub mod linalg;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
