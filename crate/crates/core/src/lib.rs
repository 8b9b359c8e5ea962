//! Two far-detuned quantum emitters coupled through a nanophotonic environment.
//!
//! The crate is organised bottom-up:
//!
//! * [`photonic`] computes the classical electromagnetic inputs: a Drude-Lorentz
//!   permittivity, free-space and sphere-scattered dyadic Green's tensors, and the
//!   master-equation rates extracted from them.
//! * [`dynamics`] assembles the rotating-frame Hamiltonian and the 16×16
//!   Liouvillian, and solves for the steady state (with a time-propagation oracle).
//! * [`observables`] evaluates fluorescence, concurrence, quadrature squeezing and
//!   spin squeezing on a steady state.
//! * [`scan`] runs configuration-driven sweeps over laser detuning and drive
//!   amplitude, writes CSV grids and reports extrema.

pub mod dynamics;
pub mod observables;
pub mod photonic;
pub mod scan;

pub use num_complex::Complex64;

/// Physical constants in SI units (CODATA 2018).
pub mod constants {
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
    pub const HBAR: f64 = 1.054_571_817e-34;
}
