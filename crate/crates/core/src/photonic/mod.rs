//! Classical electromagnetic environment: permittivity, Green's tensors, rates.

mod bessel;
mod green;
mod material;
mod mie;
mod rates;
mod vsh;

pub use green::{
    free_space_green, free_space_green_imag_coincident, homogeneous_green, sphere_local_field,
    sphere_scattered_green, DyadicGreen, PlaneWave, ScatteredGreen, SphereGeometry, SERIES_TOLERANCE,
};
pub use material::{LorentzPole, Material};
pub use mie::mie_coefficients;
pub use rates::{
    extract_rates, vacuum_decay_rate, CouplingRates, Detector, EmitterPair, RateExtraction,
};

#[doc(hidden)]
pub use green::free_space_green_series;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhotonicError {
    #[error("angular frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("field and source points coincide; the real part of the Green's tensor diverges")]
    CoincidentPoints,
    #[error("point at distance {distance:e} m from the sphere center lies inside the sphere of radius {radius:e} m")]
    PointInsideSphere { distance: f64, radius: f64 },
    #[error("Mie series not converged at order {order}: truncation estimate {estimate:e}")]
    NotConverged { order: usize, estimate: f64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("cooperative decay violates positivity: |gamma12| = {gamma12:e} > sqrt(gamma1 gamma2) = {bound:e}")]
    NotPositive { gamma12: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, PhotonicError>;
