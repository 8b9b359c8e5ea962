use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::green::{
    homogeneous_green, sphere_local_field, sphere_scattered_green, PlaneWave, SphereGeometry,
};
use super::vsh::complexify;
use super::{PhotonicError, Result};
use crate::constants::{HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};

/// Spontaneous emission rate (1/s) of a two-level emitter in vacuum,
/// `omega^3 |d|^2 / (3 pi eps0 hbar c^3)`, for a dipole moment in C m.
pub fn vacuum_decay_rate(dipole: f64, omega: f64) -> f64 {
    omega.powi(3) * dipole * dipole / (3.0 * PI * VACUUM_PERMITTIVITY * HBAR * SPEED_OF_LIGHT.powi(3))
}

/// Two emitters with transition frequencies `omega0 -/+ splitting / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmitterPair {
    /// Mean transition angular frequency in rad/s.
    pub omega0: f64,
    /// `omega_2 - omega_1` in rad/s. Kept separate from `omega0` so that the
    /// small splitting is not lost to rounding in the absolute frequencies.
    pub splitting: f64,
    /// Positions in m.
    pub positions: [Vector3<f64>; 2],
    /// Real transition dipole moments in C m.
    pub dipoles: [Vector3<f64>; 2],
}

impl EmitterPair {
    pub fn transition_frequency(&self, n: usize) -> f64 {
        match n {
            0 => self.omega0 - 0.5 * self.splitting,
            1 => self.omega0 + 0.5 * self.splitting,
            _ => panic!("emitter index must be 0 or 1"),
        }
    }

    /// Vacuum decay rate of the first emitter at the mean frequency: the natural
    /// unit for every rate in the problem.
    pub fn gamma0(&self) -> f64 {
        vacuum_decay_rate(self.dipoles[0].norm(), self.omega0)
    }

    pub fn separation(&self) -> f64 {
        (self.positions[0] - self.positions[1]).norm()
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return Err(PhotonicError::NonPositiveFrequency(self.omega0));
        }
        if self.dipoles.iter().any(|d| !(d.norm() > 0.0)) {
            return Err(PhotonicError::InvalidGeometry("dipole moments must be nonzero".into()));
        }
        if self.separation() == 0.0 {
            return Err(PhotonicError::CoincidentPoints);
        }
        Ok(())
    }
}

/// Far-field detector: a point and the polarisation component that is recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    pub position: Vector3<f64>,
    pub polarization: Vector3<f64>,
}

/// Master-equation parameters for the pair.
///
/// The rates share one unit (1/s, or a multiple of a reference rate after
/// [`CouplingRates::in_units_of`]). `enhancement` holds the dimensionless local-field
/// factors `f_n` multiplying the drive, `detection` the complex amplitudes `g_n`
/// with which each emitter's field reaches the detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingRates {
    pub gamma: [f64; 2],
    pub gamma12: f64,
    pub omega12: f64,
    pub enhancement: [Complex64; 2],
    pub detection: [Complex64; 2],
}

impl CouplingRates {
    /// Rates injected directly, with real enhancement factors and equal, in-phase
    /// detection amplitudes.
    pub fn injected(gamma: [f64; 2], gamma12: f64, omega12: f64, enhancement: [f64; 2]) -> Self {
        Self {
            gamma,
            gamma12,
            omega12,
            enhancement: enhancement.map(|f| Complex64::new(f, 0.0)),
            detection: [Complex64::new(1.0, 0.0); 2],
        }
    }

    pub fn in_units_of(&self, unit: f64) -> Self {
        Self {
            gamma: self.gamma.map(|g| g / unit),
            gamma12: self.gamma12 / unit,
            omega12: self.omega12 / unit,
            ..*self
        }
    }

    /// Same rates with balanced detection: `|g_1| = |g_2|` and `phi_1 = phi_2`.
    pub fn with_balanced_detection(&self) -> Self {
        Self {
            detection: [Complex64::new(1.0, 0.0); 2],
            ..*self
        }
    }

    pub fn detection_abs(&self) -> [f64; 2] {
        self.detection.map(|g| g.norm())
    }

    pub fn detection_phase(&self) -> [f64; 2] {
        self.detection.map(|g| g.arg())
    }

    /// `|gamma12| <= sqrt(gamma1 gamma2)`, the condition for the cooperative
    /// dissipator to be completely positive.
    pub fn check_positivity(&self) -> Result<()> {
        let bound = (self.gamma[0] * self.gamma[1]).max(0.0).sqrt();
        if self.gamma.iter().any(|g| !(*g >= 0.0)) || self.gamma12.abs() > bound * (1.0 + 1e-12) {
            return Err(PhotonicError::NotPositive {
                gamma12: self.gamma12,
                bound,
            });
        }
        Ok(())
    }
}

/// Rates in 1/s plus diagnostics of the extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct RateExtraction {
    pub rates: CouplingRates,
    /// Vacuum decay rate of the first emitter, 1/s.
    pub gamma0: f64,
    /// `|g_n|^2` relative to the same emitter radiating without the sphere.
    pub far_field_gain: [f64; 2],
    /// Largest Mie truncation estimate among all series evaluated.
    pub truncation_estimate: f64,
    /// Separation below a hundredth of the host wavelength over 2 pi: the
    /// dipole-dipole shift is then dominated by the quasi-static 1/r^3 term.
    pub near_field: bool,
}

/// Derives every master-equation parameter from the Green's tensor of the
/// environment at the mean transition frequency.
///
/// * `gamma_n = 2 k0^2/(eps0 hbar) d_n . Im G(r_n, r_n) . d_n`
/// * `Omega12 + i gamma12/2 = k0^2/(eps0 hbar) d_1 . G(r_1, r_2) . d_2`
/// * `f_n = d_n . E(r_n) / (|d_n| E0)` for the plane-wave `drive`
/// * `g_n = k0^2/eps0 e_det . G(r_det, r_n) . d_n`
///
/// Without a sphere the environment is vacuum.
pub fn extract_rates(
    pair: &EmitterPair,
    sphere: Option<&SphereGeometry>,
    drive: &PlaneWave,
    detector: &Detector,
    max_order: usize,
) -> Result<RateExtraction> {
    pair.validate()?;
    let omega = pair.omega0;
    let k0 = omega / SPEED_OF_LIGHT;
    let k = sphere.map_or(k0, |s| s.host_wavenumber(omega));
    let kappa = k0 * k0 / (VACUUM_PERMITTIVITY * HBAR);
    let det_pol = detector.polarization.try_normalize(0.0).ok_or_else(|| {
        PhotonicError::InvalidGeometry("detector polarisation must be nonzero".into())
    })?;
    let truncation = std::cell::Cell::new(0.0_f64);
    let scattered = |a: &Vector3<f64>, b: &Vector3<f64>| -> Result<Matrix3<Complex64>> {
        match sphere {
            None => Ok(Matrix3::zeros()),
            Some(s) => {
                let g = sphere_scattered_green(s, a, b, omega, max_order)?;
                truncation.set(truncation.get().max(g.truncation_estimate));
                Ok(g.green.tensor)
            }
        }
    };

    let [r1, r2] = pair.positions;
    let [d1, d2] = pair.dipoles.map(|d| complexify(&d));
    let mut gamma = [0.0; 2];
    for n in 0..2 {
        let r = pair.positions[n];
        let d = pair.dipoles[n];
        let im = Matrix3::identity() * (k / (6.0 * PI)) + scattered(&r, &r)?.map(|c| c.im);
        gamma[n] = 2.0 * kappa * d.dot(&(im * d));
    }
    let g12 = homogeneous_green(&r1, &r2, k)? + scattered(&r1, &r2)?;
    let coupling = d1.dot(&(g12 * d2)) * kappa;

    let mut enhancement = [Complex64::new(0.0, 0.0); 2];
    let mut detection = [Complex64::new(0.0, 0.0); 2];
    let mut gain = [0.0; 2];
    let e_det = complexify(&det_pol);
    for n in 0..2 {
        let r = pair.positions[n];
        let d_hat = complexify(&pair.dipoles[n].normalize());
        let field = match sphere {
            Some(s) => {
                let (field, est) = sphere_local_field(s, drive, &r, omega, max_order)?;
                truncation.set(truncation.get().max(est));
                field
            }
            None => {
                let dir = drive.direction.normalize();
                complexify(&drive.polarization.normalize()) * Complex64::from_polar(1.0, k * dir.dot(&r))
            }
        };
        enhancement[n] = d_hat.dot(&field);
        let d = complexify(&pair.dipoles[n]);
        let free = homogeneous_green(&detector.position, &r, k)?;
        let total = free + scattered(&detector.position, &r)?;
        detection[n] = e_det.dot(&(total * d)) * (k0 * k0 / VACUUM_PERMITTIVITY);
        let vacuum = e_det.dot(&(free * d)) * (k0 * k0 / VACUUM_PERMITTIVITY);
        gain[n] = detection[n].norm_sqr() / vacuum.norm_sqr();
    }

    let rates = CouplingRates {
        gamma,
        gamma12: 2.0 * coupling.im,
        omega12: coupling.re,
        enhancement,
        detection,
    };
    rates.check_positivity()?;
    Ok(RateExtraction {
        rates,
        gamma0: pair.gamma0(),
        far_field_gain: gain,
        truncation_estimate: truncation.get(),
        near_field: k * pair.separation() < 1e-2,
    })
}
