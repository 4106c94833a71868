//! Correlation polytopes of 0/1 event probabilities: exact facet enumeration,
//! membership with certificates, symmetry orbits and quantum violation checks.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod geometry;
pub mod scenario;
pub mod symmetry;
pub mod quantum;
pub mod cli;
pub use error::{Error, Result};
