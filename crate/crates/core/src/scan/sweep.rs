use std::f64::consts::TAU;

use nalgebra::{Rotation3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{DetectionMode, DipoleOrientation, GeometryConfig, RateSource, SweepConfig};
use super::Result;
use crate::constants::SPEED_OF_LIGHT;
use crate::dynamics::{build_hamiltonian, build_liouvillian, steady_state, DriveDetection};
use crate::observables::{
    concurrence, fluorescence, optimize_quadrature, spin_squeezing, QuadratureResult, SpinSqueezing,
};
use crate::photonic::{
    extract_rates, CouplingRates, Detector, EmitterPair, PlaneWave, RateExtraction, SphereGeometry,
};

/// Steady states with a larger scale-free residual are flagged as not converged.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Dipole moment used when rates come from the Green's tensor. Every rate is
/// proportional to its square, so results in units of `gamma0` do not depend on it.
const REFERENCE_DIPOLE: f64 = 3.335_640_95e-30;

/// Rates for a sweep, in units of `gamma0`, with the pair they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRates {
    /// Rates in units of `gamma0`, detection amplitudes set by the detection mode.
    pub rates: CouplingRates,
    /// Pair whose `splitting` is in units of `gamma0`.
    pub pair: EmitterPair,
    /// Rates in 1/s with diagnostics, when derived from a geometry.
    pub extraction: Option<RateExtraction>,
}

impl ResolvedRates {
    /// Flat `key = value` text. The rate block uses the key names accepted by
    /// the `injected.*` config entries, so it can be pasted into a config.
    pub fn to_key_value(&self) -> String {
        let e = |x: f64| format!("{x:.8e}");
        let r = &self.rates;
        let mut lines = vec![
            format!("injected.gamma1_over_gamma0 = {}", e(r.gamma[0])),
            format!("injected.gamma2_over_gamma0 = {}", e(r.gamma[1])),
            format!("injected.gamma12_over_gamma0 = {}", e(r.gamma12)),
            format!("injected.omega12_over_gamma0 = {}", e(r.omega12)),
            format!("injected.enhancement1 = {}", e(r.enhancement[0].norm())),
            format!("injected.enhancement2 = {}", e(r.enhancement[1].norm())),
        ];
        for n in 0..2 {
            let i = n + 1;
            lines.push(format!("enhancement{i}.re = {}", e(r.enhancement[n].re)));
            lines.push(format!("enhancement{i}.im = {}", e(r.enhancement[n].im)));
            lines.push(format!("detection{i}.abs = {}", e(r.detection[n].norm())));
            lines.push(format!("detection{i}.phase_rad = {}", e(r.detection[n].arg())));
        }
        if let Some(x) = &self.extraction {
            lines.push(format!("gamma0_per_s = {}", e(x.gamma0)));
            lines.push(format!("far_field_gain1 = {}", e(x.far_field_gain[0])));
            lines.push(format!("far_field_gain2 = {}", e(x.far_field_gain[1])));
            lines.push(format!("truncation_estimate = {}", e(x.truncation_estimate)));
            lines.push(format!("near_field = {}", x.near_field));
        }
        lines.join("\n") + "\n"
    }
}

fn emitter_positions(g: &GeometryConfig) -> [Vector3<f64>; 2] {
    let r = g.radius + g.gap;
    let first = Vector3::new(0.0, 0.0, r);
    let second = Rotation3::from_axis_angle(&Vector3::y_axis(), g.separation_angle) * first;
    [first, second]
}

fn dipole_direction(orientation: DipoleOrientation, position: &Vector3<f64>) -> Vector3<f64> {
    let radial = position.normalize();
    match orientation {
        DipoleOrientation::Radial => radial,
        DipoleOrientation::Tangential => Vector3::y().cross(&radial),
        DipoleOrientation::ParallelZ => Vector3::z(),
    }
}

/// Assembles the master-equation rates named by the config: directly for
/// injected rates, from the sphere Green's tensor otherwise.
pub fn resolve_rates(config: &SweepConfig) -> Result<ResolvedRates> {
    config.validate()?;
    let omega0 = TAU * SPEED_OF_LIGHT / config.wavelength;
    let (rates, pair, extraction) = match &config.rates {
        RateSource::Injected(inj) => {
            let rates = CouplingRates::injected(inj.gamma, inj.gamma12, inj.omega12, inj.enhancement);
            let pair = EmitterPair {
                omega0: 0.0,
                splitting: config.splitting,
                positions: [Vector3::zeros(), Vector3::x()],
                dipoles: [Vector3::z(); 2],
            };
            (rates, pair, None)
        }
        RateSource::GreenTensor(g) => {
            let positions = emitter_positions(g);
            let dipoles = positions.map(|p| dipole_direction(g.dipoles, &p) * REFERENCE_DIPOLE);
            let si = EmitterPair {
                omega0,
                splitting: 0.0,
                positions,
                dipoles,
            };
            let mut sphere = SphereGeometry::new(g.radius, g.material.clone());
            sphere.host_permittivity = g.host_permittivity;
            let drive = PlaneWave {
                direction: g.drive_direction,
                polarization: g.drive_polarization,
            };
            let detector = Detector {
                position: g.detector_direction.normalize() * g.detector_distance,
                polarization: g.detector_polarization,
            };
            let extraction = extract_rates(&si, Some(&sphere), &drive, &detector, config.max_order)?;
            let gamma0 = extraction.gamma0;
            let pair = EmitterPair {
                omega0: omega0 / gamma0,
                splitting: config.splitting,
                ..si
            };
            (extraction.rates.in_units_of(gamma0), pair, Some(extraction))
        }
    };
    let rates = match config.detection {
        DetectionMode::Balanced => rates.with_balanced_detection(),
        DetectionMode::Explicit { magnitude, phase } => CouplingRates {
            detection: [0, 1].map(|n| Complex64::from_polar(magnitude[n], phase[n])),
            ..rates
        },
        DetectionMode::Computed => {
            let scale = rates.detection_abs().into_iter().fold(0.0, f64::max);
            if scale > 0.0 {
                CouplingRates {
                    detection: rates.detection.map(|g| g / scale),
                    ..rates
                }
            } else {
                rates.with_balanced_detection()
            }
        }
    };
    Ok(ResolvedRates {
        rates,
        pair,
        extraction,
    })
}

/// Result at one `(Delta, Omega0)` point. Observables that were not selected,
/// or could not be evaluated, are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub delta: f64,
    pub rabi: f64,
    /// Steady state found with a residual below [`RESIDUAL_TOLERANCE`].
    pub converged: bool,
    pub error: Option<String>,
    pub residual: f64,
    pub populations: [f64; 4],
    pub rho14_abs: f64,
    pub fluorescence: Option<f64>,
    pub concurrence: Option<f64>,
    pub variance: Option<QuadratureResult>,
    pub spin: Option<SpinSqueezing>,
}

impl PointRecord {
    fn failed(delta: f64, rabi: f64, error: String) -> Self {
        Self {
            delta,
            rabi,
            converged: false,
            error: Some(error),
            residual: f64::NAN,
            populations: [f64::NAN; 4],
            rho14_abs: f64::NAN,
            fluorescence: None,
            concurrence: None,
            variance: None,
            spin: None,
        }
    }
}

/// Records over the grid, row-major with `Omega0` outer and `Delta` inner.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub delta: Vec<f64>,
    pub rabi: Vec<f64>,
    pub rates: CouplingRates,
    pub config: SweepConfig,
    pub records: Vec<PointRecord>,
}

impl ScanGrid {
    pub fn get(&self, rabi_index: usize, delta_index: usize) -> &PointRecord {
        &self.records[rabi_index * self.delta.len() + delta_index]
    }

    pub fn row(&self, rabi_index: usize) -> &[PointRecord] {
        let n = self.delta.len();
        &self.records[rabi_index * n..(rabi_index + 1) * n]
    }

    pub fn failed_points(&self) -> usize {
        self.records.iter().filter(|r| !r.converged).count()
    }
}

fn evaluate(config: &SweepConfig, resolved: &ResolvedRates, delta: f64, rabi: f64) -> PointRecord {
    let rates = &resolved.rates;
    let ratio = config.dephasing_over_gamma;
    let drive = DriveDetection::new(delta, rabi).with_dephasing(rates.gamma.map(|g| ratio * g));
    let h = build_hamiltonian(&resolved.pair, rates, &drive);
    let solved = build_liouvillian(&h, rates, &drive).and_then(|l| steady_state(&l));
    let ss = match solved {
        Ok(ss) => ss,
        Err(e) => return PointRecord::failed(delta, rabi, e.to_string()),
    };
    let rho = &ss.rho;
    let sel = config.observables;
    let mut error = None;
    let conc = if sel.concurrence {
        match concurrence(rho) {
            Ok(c) => Some(c),
            Err(e) => {
                error = Some(e.to_string());
                None
            }
        }
    } else {
        None
    };
    PointRecord {
        delta,
        rabi,
        converged: ss.residual < RESIDUAL_TOLERANCE && error.is_none(),
        error,
        residual: ss.residual,
        populations: rho.populations(),
        rho14_abs: rho.rho(1, 4).norm(),
        fluorescence: sel.fluorescence.then(|| fluorescence(rho, rates)),
        concurrence: conc,
        variance: sel
            .variance
            .then(|| optimize_quadrature(rho, rates, config.phase_grid)),
        spin: sel.spin.then(|| spin_squeezing(rho)),
    }
}

/// Solves the steady state at every grid point and evaluates the selected
/// observables. Points are evaluated in parallel on the current rayon pool;
/// the record order, and every value, is independent of the thread count.
/// A point that fails is kept with `converged = false` and its error message.
pub fn run_sweep(config: &SweepConfig) -> Result<ScanGrid> {
    let resolved = resolve_rates(config)?;
    let delta = config.delta.values();
    let rabi = config.rabi.values();
    let nd = delta.len();
    let records = (0..rabi.len() * nd)
        .into_par_iter()
        .map(|i| evaluate(config, &resolved, delta[i % nd], rabi[i / nd]))
        .collect();
    Ok(ScanGrid {
        delta,
        rabi,
        rates: resolved.rates,
        config: config.clone(),
        records,
    })
}
