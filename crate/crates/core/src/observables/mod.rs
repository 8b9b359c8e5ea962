//! Observables evaluated on a steady state.
//!
//! Formulas use 1-based basis labels `rho_ij = <i|rho|j>` with
//! `|1> = |g1 g2>`, `|2> = |g1 e2>`, `|3> = |e1 g2>`, `|4> = |e1 e2>`.

mod concurrence;
mod fluorescence;
mod quadrature;
mod spin;

pub use concurrence::{concurrence, concurrence_cross_approx, concurrence_via_fidelity, CrossShape};
pub use fluorescence::{fluorescence, rho44_perturbative, rho44_quoted};
pub use quadrature::{
    optimize_quadrature, quadrature_variance, squeezing_two_level_approx, PhaseGrid,
    QuadratureResult, TwoLevelSqueezing, INDEPENDENT_EMITTER_THRESHOLD,
};
pub use spin::{spin_squeezing, SpinSqueezing};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObservableError {
    #[error("laser within {distance:e} of the bare resonance of emitter {emitter}; perturbative formula singular")]
    SingularResonance { emitter: usize, distance: f64 },
    #[error("concurrence operator has eigenvalue {value} outside tolerance")]
    InvalidSpectrum { value: num_complex::Complex64 },
}

pub type Result<T> = std::result::Result<T, ObservableError>;
