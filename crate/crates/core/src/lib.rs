//! Numerical laboratory for Poncelet 3-periodic triangle families between
//! nested ellipses: family construction, triangle centers and circles,
//! invariant powers, locus fitting and stationary-power searches.

pub mod centers;
pub mod engine;
pub mod error;
pub mod geom;
pub mod invariant;
pub mod locus;
pub mod random;
pub mod search;

pub use error::{Error, Result};
