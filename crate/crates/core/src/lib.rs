//! Thermal coherent states of thermo field dynamics on a truncated two-mode
//! Fock space, cross-checked against exact Gaussian moments.
//!
//! Two-mode vectors use the index `n_ordinary * d + n_tilde` throughout.

pub mod equivalence;
pub mod error;
pub mod exec;
pub mod fockspace;
pub mod gaussian_oracle;
pub mod linalg;
pub mod observables;
pub mod opo;
pub mod quasiprob;
pub mod tfd_states;

pub use error::{Result, TfdError};
pub use exec::Exec;
pub use linalg::C64;
