//! Exact Bernstein-basis finite element complexes with extra smoothness.

pub mod bernstein;
pub mod cli;
pub mod complex;
pub mod decomposition;
pub mod elements;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod stability;

pub use error::{Error, Result};
