//! Qubit stochastic maps in the Stokes picture.
//!
//! A state is written `rho = (I + w.sigma) / 2` and a channel acts on Bloch
//! vectors as `w -> t + T w`. Kraus operators follow the adjoint convention
//! `Phi(rho) = sum_k A_k^dagger rho A_k`, so trace preservation reads
//! `sum_k A_k A_k^dagger = I` and unitality reads `sum_k A_k^dagger A_k = I`.
//!
//! Entropies are in nats throughout.

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod cp;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod minent;
pub mod optimize;
pub mod qstate;

pub use error::{Error, Result};
pub use linalg::C64;
