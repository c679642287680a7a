pub mod cli;
pub mod clifford;
pub mod error;
pub mod json;
pub mod multilinear;
pub mod sampling;
pub mod torus;

pub use error::{Error, Result};
