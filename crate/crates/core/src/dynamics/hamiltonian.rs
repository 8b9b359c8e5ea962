use num_complex::Complex64;

use super::operators::{sigma, sigma_z, Op4};
use super::{DynamicsError, Result};
use crate::photonic::{CouplingRates, EmitterPair};

/// Laser and detection settings for one operating point.
///
/// All frequencies share the unit of the [`CouplingRates`] they are combined with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveDetection {
    /// Laser detuning from the mean transition frequency, `omega_L - omega_0`.
    pub detuning: f64,
    /// Free-space Rabi amplitude `Omega_0`; emitter `n` sees `f_n Omega_0`.
    pub rabi: f64,
    /// Quadrature angle in radians.
    pub theta: f64,
    /// Pure-dephasing rates `gamma*_1`, `gamma*_2`.
    pub dephasing: [f64; 2],
}

impl DriveDetection {
    pub fn new(detuning: f64, rabi: f64) -> Self {
        Self {
            detuning,
            rabi,
            theta: 0.0,
            dephasing: [0.0; 2],
        }
    }

    pub fn with_dephasing(self, dephasing: [f64; 2]) -> Self {
        Self { dephasing, ..self }
    }

    /// Complex Rabi frequencies `Omega_n = f_n Omega_0`.
    pub fn rabi_frequencies(&self, rates: &CouplingRates) -> [Complex64; 2] {
        rates.enhancement.map(|f| f * self.rabi)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.detuning.is_finite() && self.rabi.is_finite() && self.theta.is_finite();
        if !finite || self.rabi < 0.0 || self.dephasing.iter().any(|g| !(*g >= 0.0) || !g.is_finite()) {
            return Err(DynamicsError::InvalidDrive(format!(
                "need finite values with rabi >= 0 and dephasing >= 0, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Rotating-frame Hamiltonian (in frequency units, `H / hbar`)
///
/// `H = sum_n (omega_n - omega_L) sz_n - (Omega_n/2 s_n^dag + Omega_n^*/2 s_n)
///      - Omega12 (s_1^dag s_2 + s_2^dag s_1)`
///
/// with `omega_n - omega_L = -/+ splitting/2 - detuning`. The absolute transition
/// frequency never enters, only the splitting of the pair.
pub fn build_hamiltonian(pair: &EmitterPair, rates: &CouplingRates, drive: &DriveDetection) -> Op4 {
    let offsets = [
        -0.5 * pair.splitting - drive.detuning,
        0.5 * pair.splitting - drive.detuning,
    ];
    let rabi = drive.rabi_frequencies(rates);
    let mut h = Op4::zeros();
    for n in 0..2 {
        let s = sigma(n);
        h += sigma_z(n) * Complex64::new(offsets[n], 0.0);
        h -= s.adjoint() * (rabi[n] * 0.5) + s * (rabi[n].conj() * 0.5);
    }
    let (s1, s2) = (sigma(0), sigma(1));
    h -= (s1.adjoint() * s2 + s2.adjoint() * s1) * Complex64::new(rates.omega12, 0.0);
    h
}
