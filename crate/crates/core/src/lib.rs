//! Exact obstruction theory for lifting semifree DG modules along free DG algebra
//! extensions `B = R⟨X₁,…,Xₙ⟩`.

pub mod cli_format;
pub mod coefficients;
pub mod envelope;
pub mod error;
pub mod exact_linalg;
mod format;
pub mod free_dga;
pub mod lincomb;
pub mod obstruction;
pub mod random;
pub mod scalar;
pub mod selftest;
pub mod semifree_module;

pub use error::{Error, Result};
