//! Rotating-frame master equation for the emitter pair and its steady state.
//!
//! Basis ordering is `|1> = |g1 g2>`, `|2> = |g1 e2>`, `|3> = |e1 g2>`,
//! `|4> = |e1 e2>`, i.e. index `2 e1 + e2`. Density matrices are vectorised by
//! stacking columns, so `vec(A X B) = (B^T kron A) vec(X)`.

mod basis;
mod density;
mod hamiltonian;
mod liouvillian;
pub mod operators;
mod propagate;
mod steady;

pub use basis::{coupled_basis, CoupledBasis};
pub use density::DensityMatrix4;
pub use hamiltonian::{build_hamiltonian, DriveDetection};
pub use liouvillian::{build_liouvillian, Liouvillian};
pub use propagate::{evolve, propagate_to_steady_state, Propagation, PropagationOptions};
pub use steady::{steady_state, SteadyState};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("invalid drive: {0}")]
    InvalidDrive(String),
    #[error("decay matrix is not positive semidefinite: |gamma12| = {gamma12:e}, sqrt(gamma1 gamma2) = {bound:e}")]
    NotPositive { gamma12: f64, bound: f64 },
    #[error("steady state is degenerate or ill-conditioned (pivot ratio {pivot_ratio:e})")]
    DegenerateSteadyState { pivot_ratio: f64 },
    #[error("density matrix has eigenvalue {min_eigenvalue:e} below the clipping tolerance")]
    NotPhysical { min_eigenvalue: f64 },
    #[error("time propagation did not converge by t = {time:e} (|d rho/dt| = {derivative:e})")]
    NotConverged { time: f64, derivative: f64 },
}

pub type Result<T> = std::result::Result<T, DynamicsError>;
