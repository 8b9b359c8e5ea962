use num_complex::Complex64;

use super::{ObservableError, Result};
use crate::dynamics::{DensityMatrix4, DriveDetection};
use crate::photonic::{CouplingRates, EmitterPair};

/// Incoherent fluorescence `sum_i |g_i|^2 <s_i^dag s_i>`.
pub fn fluorescence(rho: &DensityMatrix4, rates: &CouplingRates) -> f64 {
    let [g1, g2] = rates.detection_abs();
    g1 * g1 * (rho.population(3) + rho.population(4)) + g2 * g2 * (rho.population(2) + rho.population(4))
}

fn detunings(pair: &EmitterPair, drive: &DriveDetection, rates: &CouplingRates) -> Result<[f64; 2]> {
    let w = [
        -0.5 * pair.splitting - drive.detuning,
        0.5 * pair.splitting - drive.detuning,
    ];
    for n in 0..2 {
        if w[n].abs() < rates.gamma[n] {
            return Err(ObservableError::SingularResonance {
                emitter: n + 1,
                distance: w[n].abs(),
            });
        }
    }
    Ok(w)
}

/// Leading-order (in the drive) doubly-excited population of the pair.
///
/// Adiabatic elimination of the single-excitation states gives a two-photon
/// amplitude with a direct path through either emitter and a path through the
/// complex coupling `Omega12 + i gamma12/2`:
///
/// `rho44 = |Omega1 Omega2 (w1 + w2 - i(g1+g2)/2) + (Omega12 + i g12/2)(Omega1^2 + Omega2^2)|^2
///          / (4 |(w1 - i g1/2)(w2 - i g2/2)|^2 ((g1+g2)^2 + 16 Delta^2))`
///
/// with `w_n = omega_n - omega_L`. It converges to the full solution as the
/// drive vanishes and carries the same two interfering amplitude terms as the
/// commonly quoted expression (see [`rho44_quoted`]), written in the σ_z and Rabi
/// conventions of this crate's Hamiltonian. Errors when the laser sits within
/// one linewidth of a bare single-emitter resonance.
pub fn rho44_perturbative(
    pair: &EmitterPair,
    rates: &CouplingRates,
    drive: &DriveDetection,
) -> Result<f64> {
    let [w1, w2] = detunings(pair, drive, rates)?;
    let [o1, o2] = drive.rabi_frequencies(rates);
    let [g1, g2] = rates.gamma;
    let coupling = Complex64::new(rates.omega12, 0.5 * rates.gamma12);
    let amp = o1 * o2 * Complex64::new(w1 + w2, -0.5 * (g1 + g2)) + coupling * (o1 * o1 + o2 * o2);
    let prop = Complex64::new(w1, -0.5 * g1) * Complex64::new(w2, -0.5 * g2);
    let lorentz = (g1 + g2).powi(2) + 16.0 * drive.detuning.powi(2);
    Ok(amp.norm_sqr() / (4.0 * prop.norm_sqr() * lorentz))
}

/// The perturbative doubly-excited population in its commonly quoted form,
///
/// `rho44 = |2 O1 O2 (w1 + w2) - Omega12 (O1^2 + O2^2)|^2 / (|w1 w2|^2 ((g1+g2)^2 + (2 Delta)^2))`,
///
/// evaluated literally with `O_n = f_n Omega_0` and `w_n = omega_n - omega_L`. Its
/// Rabi and linewidth conventions differ from the Hamiltonian used here, so it
/// is provided for comparison only.
pub fn rho44_quoted(pair: &EmitterPair, rates: &CouplingRates, drive: &DriveDetection) -> Result<f64> {
    let [w1, w2] = detunings(pair, drive, rates)?;
    let [o1, o2] = drive.rabi_frequencies(rates);
    let den = w1 * w2;
    let amp = (o1 * o2 * (2.0 * (w1 + w2)) - (o1 * o1 + o2 * o2) * rates.omega12) / den;
    let [g1, g2] = rates.gamma;
    Ok(amp.norm_sqr() / ((g1 + g2).powi(2) + 4.0 * drive.detuning.powi(2)))
}
