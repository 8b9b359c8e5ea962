use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use nalgebra::Vector3;

use super::{Result, ScanError};
use crate::observables::PhaseGrid;
use crate::photonic::{LorentzPole, Material};

/// Evenly spaced axis, `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                self.min * (1.0 - t) + self.max * t
            })
            .collect()
    }

    pub fn step(&self) -> f64 {
        if self.count > 1 {
            (self.max - self.min) / (self.count - 1) as f64
        } else {
            0.0
        }
    }
}

/// Master-equation rates given directly, in units of `gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InjectedRates {
    pub gamma: [f64; 2],
    pub gamma12: f64,
    pub omega12: f64,
    pub enhancement: [f64; 2],
}

impl Default for InjectedRates {
    fn default() -> Self {
        Self {
            gamma: [2.9, 2.9],
            gamma12: -2.6,
            omega12: -6.4,
            enhancement: [2.0, 2.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleOrientation {
    /// Along the outward surface normal at each emitter.
    Radial,
    /// In the plane of the two emitters, perpendicular to the surface normal.
    Tangential,
    /// Both along +z.
    ParallelZ,
}

/// Emitters at gap `gap` outside a sphere of radius `radius` centred at the
/// origin: emitter 1 on +z, emitter 2 rotated by `separation_angle` about y.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryConfig {
    pub radius: f64,
    pub gap: f64,
    pub separation_angle: f64,
    pub dipoles: DipoleOrientation,
    pub material: Material,
    pub host_permittivity: f64,
    pub drive_direction: Vector3<f64>,
    pub drive_polarization: Vector3<f64>,
    pub detector_direction: Vector3<f64>,
    pub detector_distance: f64,
    pub detector_polarization: Vector3<f64>,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            radius: 40e-9,
            gap: 25e-9,
            separation_angle: PI,
            dipoles: DipoleOrientation::Radial,
            material: Material::gold(),
            host_permittivity: 1.0,
            drive_direction: Vector3::x(),
            drive_polarization: Vector3::z(),
            detector_direction: Vector3::x(),
            detector_distance: 1e-3,
            detector_polarization: Vector3::z(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RateSource {
    Injected(InjectedRates),
    GreenTensor(GeometryConfig),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionMode {
    /// `|g_1| = |g_2|`, `phi_1 = phi_2`.
    Balanced,
    Explicit { magnitude: [f64; 2], phase: [f64; 2] },
    /// Amplitudes from the Green's tensor at the detector (balanced for injected rates).
    Computed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObservableSelection {
    pub fluorescence: bool,
    pub concurrence: bool,
    pub variance: bool,
    pub spin: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub rates: RateSource,
    /// Mean transition wavelength in m.
    pub wavelength: f64,
    /// `omega_2 - omega_1` in units of `gamma0`.
    pub splitting: f64,
    /// Laser detuning axis in units of `gamma0`.
    pub delta: Axis,
    /// Free-space Rabi amplitude axis in units of `gamma0`.
    pub rabi: Axis,
    /// Pure dephasing of each emitter as a multiple of its own decay rate.
    pub dephasing_over_gamma: f64,
    pub detection: DetectionMode,
    pub phase_grid: PhaseGrid,
    pub observables: ObservableSelection,
    pub max_order: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            rates: RateSource::Injected(InjectedRates::default()),
            wavelength: 780e-9,
            splitting: 400.0,
            delta: Axis { min: -30.0, max: 30.0, count: 121 },
            rabi: Axis { min: 0.0, max: 150.0, count: 121 },
            dephasing_over_gamma: 0.0,
            detection: DetectionMode::Balanced,
            phase_grid: PhaseGrid::Uniform(64),
            observables: ObservableSelection {
                fluorescence: true,
                concurrence: true,
                variance: true,
                spin: false,
            },
            max_order: 40,
        }
    }
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => parse_f64(line, &v),
        }
    }

    fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => v.parse().map_err(|_| ScanError::Parse {
                line,
                message: format!("`{key}` expects a nonnegative integer, got `{v}`"),
            }),
        }
    }

    fn vector(&mut self, key: &str, default: Vector3<f64>) -> Result<Vector3<f64>> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => {
                let parts: Vec<&str> = v.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(ScanError::Parse {
                        line,
                        message: format!("`{key}` expects three comma-separated numbers"),
                    });
                }
                Ok(Vector3::new(
                    parse_f64(line, parts[0])?,
                    parse_f64(line, parts[1])?,
                    parse_f64(line, parts[2])?,
                ))
            }
        }
    }
}

fn parse_f64(line: usize, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ScanError::Parse {
            line,
            message: format!("expected a finite number, got `{v}`"),
        })
}

impl SweepConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses `key = value` lines. `#` starts a comment. Unknown and repeated
    /// keys are errors; omitted keys take the defaults of [`SweepConfig::default`]
    /// (and of [`GeometryConfig::default`] for geometry keys).
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ScanError::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let key = key.trim().to_string();
            if map.insert(key.clone(), (line, value.trim().to_string())).is_some() {
                return Err(ScanError::Parse {
                    line,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        let mut e = Entries { map };
        let d = SweepConfig::default();

        let source = e.take("rates.source").map(|(l, v)| (l, v.to_lowercase()));
        let injected = InjectedRates {
            gamma: [
                e.f64("injected.gamma1_over_gamma0", 2.9)?,
                e.f64("injected.gamma2_over_gamma0", 2.9)?,
            ],
            gamma12: e.f64("injected.gamma12_over_gamma0", -2.6)?,
            omega12: e.f64("injected.omega12_over_gamma0", -6.4)?,
            enhancement: [e.f64("injected.enhancement1", 2.0)?, e.f64("injected.enhancement2", 2.0)?],
        };
        let geometry = parse_geometry(&mut e)?;
        let rates = match source {
            None => RateSource::Injected(injected),
            Some((_, v)) if v == "injected" => RateSource::Injected(injected),
            Some((_, v)) if v == "green-tensor" => RateSource::GreenTensor(geometry),
            Some((line, v)) => {
                return Err(ScanError::Parse {
                    line,
                    message: format!("rates.source must be `injected` or `green-tensor`, got `{v}`"),
                })
            }
        };

        let detection = match e.take("detection") {
            None => d.detection,
            Some((line, v)) => match v.as_str() {
                "balanced" => DetectionMode::Balanced,
                "computed" => DetectionMode::Computed,
                "explicit" => DetectionMode::Explicit {
                    magnitude: [e.f64("detection.g1_abs", 1.0)?, e.f64("detection.g2_abs", 1.0)?],
                    phase: [e.f64("detection.phi1_rad", 0.0)?, e.f64("detection.phi2_rad", 0.0)?],
                },
                _ => {
                    return Err(ScanError::Parse {
                        line,
                        message: format!("detection must be balanced, explicit or computed, got `{v}`"),
                    })
                }
            },
        };
        let phase_grid = match e.take("phase_grid") {
            None => d.phase_grid,
            Some((_, v)) if v == "detector" => PhaseGrid::Detector,
            Some((line, v)) => match v.parse::<usize>() {
                Ok(n) if n >= 1 => PhaseGrid::Uniform(n),
                _ => {
                    return Err(ScanError::Parse {
                        line,
                        message: format!("phase_grid must be `detector` or a positive integer, got `{v}`"),
                    })
                }
            },
        };
        let observables = match e.take("observables") {
            None => d.observables,
            Some((line, v)) => {
                let mut sel = ObservableSelection {
                    fluorescence: false,
                    concurrence: false,
                    variance: false,
                    spin: false,
                };
                for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    match item {
                        "fluorescence" => sel.fluorescence = true,
                        "concurrence" => sel.concurrence = true,
                        "variance" => sel.variance = true,
                        "spin" => sel.spin = true,
                        _ => {
                            return Err(ScanError::Parse {
                                line,
                                message: format!("unknown observable `{item}`"),
                            })
                        }
                    }
                }
                sel
            }
        };
        let cfg = SweepConfig {
            rates,
            wavelength: e.f64("wavelength_nm", d.wavelength * 1e9)? * 1e-9,
            splitting: e.f64("splitting_over_gamma0", d.splitting)?,
            delta: Axis {
                min: e.f64("delta.min_over_gamma0", d.delta.min)?,
                max: e.f64("delta.max_over_gamma0", d.delta.max)?,
                count: e.usize("delta.count", d.delta.count)?,
            },
            rabi: Axis {
                min: e.f64("rabi.min_over_gamma0", d.rabi.min)?,
                max: e.f64("rabi.max_over_gamma0", d.rabi.max)?,
                count: e.usize("rabi.count", d.rabi.count)?,
            },
            dephasing_over_gamma: e.f64("dephasing_over_gamma", d.dephasing_over_gamma)?,
            detection,
            phase_grid,
            observables,
            max_order: e.usize("series.max_order", d.max_order)?,
        };
        if let Some((key, (line, _))) = e.map.into_iter().next() {
            return Err(ScanError::Parse {
                line,
                message: format!("unknown key `{key}`"),
            });
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ScanError::Invalid(m.to_string()));
        for (name, axis) in [("delta", &self.delta), ("rabi", &self.rabi)] {
            if axis.count == 0 {
                return bad(&format!("{name}.count must be at least 1"));
            }
            if !axis.min.is_finite() || !axis.max.is_finite() || axis.max < axis.min {
                return bad(&format!("{name} axis needs finite min <= max"));
            }
        }
        if self.rabi.min < 0.0 {
            return bad("rabi amplitudes must be nonnegative");
        }
        if !(self.wavelength > 0.0) {
            return bad("wavelength must be positive");
        }
        if !(self.dephasing_over_gamma >= 0.0) {
            return bad("dephasing_over_gamma must be nonnegative");
        }
        if self.max_order == 0 {
            return bad("series.max_order must be at least 1");
        }
        if let DetectionMode::Explicit { magnitude, .. } = self.detection {
            if magnitude.iter().any(|g| !(*g >= 0.0)) || magnitude.iter().all(|g| *g == 0.0) {
                return bad("detection magnitudes must be nonnegative and not both zero");
            }
        }
        if let RateSource::GreenTensor(g) = &self.rates {
            if !(g.radius > 0.0) || !(g.gap > 0.0) {
                return bad("geometry radius and gap must be positive");
            }
            if !(g.detector_distance > g.radius + g.gap) {
                return bad("detector must lie outside the emitter shell");
            }
        }
        Ok(())
    }
}

fn parse_geometry(e: &mut Entries) -> Result<GeometryConfig> {
    let d = GeometryConfig::default();
    let dipoles = match e.take("geometry.dipoles") {
        None => d.dipoles,
        Some((line, v)) => match v.as_str() {
            "radial" => DipoleOrientation::Radial,
            "tangential" => DipoleOrientation::Tangential,
            "z" => DipoleOrientation::ParallelZ,
            _ => {
                return Err(ScanError::Parse {
                    line,
                    message: format!("geometry.dipoles must be radial, tangential or z, got `{v}`"),
                })
            }
        },
    };
    let mut material = Material {
        background: e.f64("material.background", d.material.background)?,
        plasma: e.f64("material.plasma_rad_per_s", d.material.plasma)?,
        damping: e.f64("material.damping_rad_per_s", d.material.damping)?,
        poles: Vec::new(),
    };
    let explicit_poles = e.map.keys().any(|k| k.starts_with("material.pole"));
    if explicit_poles {
        let mut n = 1;
        while e.map.contains_key(&format!("material.pole{n}.strength")) {
            material.poles.push(LorentzPole {
                strength: e.f64(&format!("material.pole{n}.strength"), 0.0)?,
                center: e.f64(&format!("material.pole{n}.center_rad_per_s"), 0.0)?,
                width: e.f64(&format!("material.pole{n}.width_rad_per_s"), 0.0)?,
            });
            n += 1;
        }
    } else {
        material.poles = d.material.poles.clone();
    }
    Ok(GeometryConfig {
        radius: e.f64("geometry.radius_nm", d.radius * 1e9)? * 1e-9,
        gap: e.f64("geometry.gap_nm", d.gap * 1e9)? * 1e-9,
        separation_angle: e.f64("geometry.separation_angle_deg", d.separation_angle.to_degrees())?
            .to_radians(),
        dipoles,
        material,
        host_permittivity: e.f64("geometry.host_permittivity", d.host_permittivity)?,
        drive_direction: e.vector("drive.direction", d.drive_direction)?,
        drive_polarization: e.vector("drive.polarization", d.drive_polarization)?,
        detector_direction: e.vector("detector.direction", d.detector_direction)?,
        detector_distance: e.f64("detector.distance_um", d.detector_distance * 1e6)? * 1e-6,
        detector_polarization: e.vector("detector.polarization", d.detector_polarization)?,
    })
}
