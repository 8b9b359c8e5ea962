use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::material::Material;
use super::mie::mie_coefficients;
use super::vsh::{
    complexify, m_wave, n_wave, plane_wave_coefficients, rotation_to_pole, Angular, CVec3, Point,
    Radial, RadialKind,
};
use super::{PhotonicError, Result};
use crate::constants::SPEED_OF_LIGHT;

/// Relative truncation estimate above which a Mie series is reported as not converged.
pub const SERIES_TOLERANCE: f64 = 1e-8;

/// Contributions below this fraction of the running sum are at rounding level.
const NEGLIGIBLE: f64 = 1e-17;

/// Dyadic Green's tensor `G(r_field, r_source; omega)` in m^-1, normalised as
/// `curl curl G - k^2 G = I delta(r - r')`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicGreen {
    pub tensor: Matrix3<Complex64>,
    pub field_point: Vector3<f64>,
    pub source_point: Vector3<f64>,
    pub omega: f64,
}

/// A sphere of `material` embedded in a lossless host of relative permittivity
/// `host_permittivity`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGeometry {
    pub center: Vector3<f64>,
    pub radius: f64,
    pub material: Material,
    pub host_permittivity: f64,
}

impl SphereGeometry {
    pub fn new(radius: f64, material: Material) -> Self {
        Self {
            center: Vector3::zeros(),
            radius,
            material,
            host_permittivity: 1.0,
        }
    }

    /// Host wavenumber at angular frequency `omega`.
    pub fn host_wavenumber(&self, omega: f64) -> f64 {
        omega * self.host_permittivity.sqrt() / SPEED_OF_LIGHT
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(PhotonicError::InvalidGeometry(format!(
                "sphere radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.host_permittivity > 0.0) {
            return Err(PhotonicError::InvalidGeometry(format!(
                "host permittivity must be positive, got {}",
                self.host_permittivity
            )));
        }
        Ok(())
    }

    fn outside(&self, r: &Vector3<f64>) -> Result<Vector3<f64>> {
        let rel = r - self.center;
        let distance = rel.norm();
        if distance <= self.radius {
            return Err(PhotonicError::PointInsideSphere {
                distance,
                radius: self.radius,
            });
        }
        Ok(rel)
    }
}

/// Tensor of the scattered part together with the series diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteredGreen {
    pub green: DyadicGreen,
    /// Norm of the last retained order relative to the norm of the sum.
    pub truncation_estimate: f64,
    pub orders_used: usize,
}

/// Homogeneous-medium Green's tensor at wavenumber `k` for distinct points.
pub fn homogeneous_green(
    r_a: &Vector3<f64>,
    r_b: &Vector3<f64>,
    k: f64,
) -> Result<Matrix3<Complex64>> {
    let d = r_a - r_b;
    let r = d.norm();
    if r == 0.0 {
        return Err(PhotonicError::CoincidentPoints);
    }
    let u = d / r;
    let kr = k * r;
    let inv = 1.0 / kr;
    let phase = Complex64::from_polar(1.0, kr) / (4.0 * PI * r);
    let a = Complex64::new(1.0 - inv * inv, inv);
    let b = Complex64::new(3.0 * inv * inv - 1.0, -3.0 * inv);
    let uu = (u * u.transpose()).map(|c| Complex64::new(c, 0.0));
    Ok((Matrix3::identity() * a + uu * b) * phase)
}

/// Vacuum Green's tensor for distinct points.
pub fn free_space_green(
    r_a: &Vector3<f64>,
    r_b: &Vector3<f64>,
    omega: f64,
) -> Result<DyadicGreen> {
    check_frequency(omega)?;
    Ok(DyadicGreen {
        tensor: homogeneous_green(r_a, r_b, omega / SPEED_OF_LIGHT)?,
        field_point: *r_a,
        source_point: *r_b,
        omega,
    })
}

/// `Im G0(r, r)`, finite at coincidence: `k / (6 pi)` times the identity.
pub fn free_space_green_imag_coincident(omega: f64) -> Matrix3<f64> {
    Matrix3::identity() * (omega / SPEED_OF_LIGHT / (6.0 * PI))
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(PhotonicError::NonPositiveFrequency(omega))
    }
}

/// Vacuum Green's tensor from its vector-spherical-wave expansion about the
/// origin, truncated at `nmax`. Requires `|r_a| > |r_b| > 0`. Used to validate the
/// wave functions against the closed form.
pub fn free_space_green_series(
    r_a: &Vector3<f64>,
    r_b: &Vector3<f64>,
    k: f64,
    nmax: usize,
) -> Matrix3<Complex64> {
    assert!(r_a.norm() > r_b.norm() && r_b.norm() > 0.0);
    let q = rotation_to_pole(r_b);
    let (pa, pb) = (Point::new(&(q * r_a)), Point::new(&(q * r_b)));
    let (ang_a, ang_b) = (Angular::new(&pa, nmax), Angular::new(&pb, nmax).conj());
    let rad_a = Radial::new(RadialKind::Outgoing, nmax, k * pa.r);
    let rad_b = Radial::new(RadialKind::Regular, nmax, k * pb.r);
    let mut g = Matrix3::zeros();
    for n in 1..=nmax {
        for m in 0..3 {
            g += m_wave(&ang_a, &rad_a, n, m) * m_wave(&ang_b, &rad_b, n, m).transpose()
                + n_wave(&pa, &ang_a, &rad_a, n, m, false)
                    * n_wave(&pb, &ang_b, &rad_b, n, m, true).transpose();
        }
    }
    let rot = q.matrix().map(|c| Complex64::new(c, 0.0));
    rot.transpose() * g * Complex64::new(0.0, k) * rot
}

fn relative_index(geom: &SphereGeometry, omega: f64) -> Result<Complex64> {
    Ok((geom.material.permittivity(omega)? / geom.host_permittivity).sqrt())
}

/// Scattered part of the Green's tensor outside a sphere, by Mie series.
///
/// Both points must lie outside the sphere and may coincide. The series is summed
/// until an order contributes at rounding level or `max_order` is reached; if the
/// last retained order still exceeds [`SERIES_TOLERANCE`] of the sum the call
/// fails with [`PhotonicError::NotConverged`].
pub fn sphere_scattered_green(
    geom: &SphereGeometry,
    r_a: &Vector3<f64>,
    r_b: &Vector3<f64>,
    omega: f64,
    max_order: usize,
) -> Result<ScatteredGreen> {
    check_frequency(omega)?;
    geom.validate()?;
    let a_rel = geom.outside(r_a)?;
    let b_rel = geom.outside(r_b)?;
    let k = geom.host_wavenumber(omega);
    let coeffs = mie_coefficients(relative_index(geom, omega)?, k * geom.radius, max_order);

    let q = rotation_to_pole(&b_rel);
    let (pa, pb) = (Point::new(&(q * a_rel)), Point::new(&(q * b_rel)));
    let (ang_a, ang_b) = (Angular::new(&pa, max_order), Angular::new(&pb, max_order).conj());
    let rad_a = Radial::new(RadialKind::Outgoing, max_order, k * pa.r);
    let rad_b = Radial::new(RadialKind::Outgoing, max_order, k * pb.r);

    let mut sum = Matrix3::zeros();
    let mut estimate = f64::INFINITY;
    let mut used = 0;
    for n in 1..=max_order {
        let (a_n, b_n) = coeffs[n - 1];
        let mut term = Matrix3::zeros();
        for m in 0..3 {
            term += m_wave(&ang_a, &rad_a, n, m) * m_wave(&ang_b, &rad_b, n, m).transpose() * b_n
                + n_wave(&pa, &ang_a, &rad_a, n, m, false)
                    * n_wave(&pb, &ang_b, &rad_b, n, m, true).transpose()
                    * a_n;
        }
        if !term.iter().all(|c| c.is_finite()) {
            // vanishing coefficients times overflowing Hankel functions
            if a_n.norm() == 0.0 && b_n.norm() == 0.0 {
                estimate = 0.0;
                break;
            }
            return Err(PhotonicError::NotConverged {
                order: n,
                estimate: f64::INFINITY,
            });
        }
        sum += term;
        used = n;
        let total = sum.norm();
        estimate = if total > 0.0 { term.norm() / total } else { 0.0 };
        if estimate < NEGLIGIBLE {
            break;
        }
    }
    if estimate > SERIES_TOLERANCE {
        return Err(PhotonicError::NotConverged {
            order: used,
            estimate,
        });
    }
    let rot = q.matrix().map(|c| Complex64::new(c, 0.0));
    let tensor = rot.transpose() * sum * Complex64::new(0.0, -k) * rot;
    Ok(ScatteredGreen {
        green: DyadicGreen {
            tensor,
            field_point: *r_a,
            source_point: *r_b,
            omega,
        },
        truncation_estimate: estimate,
        orders_used: used,
    })
}

/// A unit-amplitude monochromatic plane wave `polarization * exp(i k direction.(r - c))`,
/// with its phase referenced to the sphere center `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub direction: Vector3<f64>,
    pub polarization: Vector3<f64>,
}

impl PlaneWave {
    fn validate(&self) -> Result<(Vector3<f64>, Vector3<f64>)> {
        let k = self.direction.try_normalize(0.0);
        let e = self.polarization.try_normalize(0.0);
        match (k, e) {
            (Some(k), Some(e)) if k.dot(&e).abs() < 1e-9 => Ok((k, e)),
            _ => Err(PhotonicError::InvalidGeometry(
                "plane wave needs nonzero, mutually orthogonal direction and polarization".into(),
            )),
        }
    }
}

/// Total electric field (incident plus scattered) at `r` for a unit plane wave
/// incident on the sphere, together with the series truncation estimate.
pub fn sphere_local_field(
    geom: &SphereGeometry,
    wave: &PlaneWave,
    r: &Vector3<f64>,
    omega: f64,
    max_order: usize,
) -> Result<(CVec3, f64)> {
    check_frequency(omega)?;
    geom.validate()?;
    let (k_hat, e_hat) = wave.validate()?;
    let rel = geom.outside(r)?;
    let k = geom.host_wavenumber(omega);
    let coeffs = mie_coefficients(relative_index(geom, omega)?, k * geom.radius, max_order);

    let q = rotation_to_pole(&k_hat);
    let e_rot = complexify(&(q * e_hat));
    let pole = Angular::new(&Point::new(&Vector3::z()), max_order).conj();
    let point = Point::new(&(q * rel));
    let ang = Angular::new(&point, max_order);
    let rad = Radial::new(RadialKind::Outgoing, max_order, k * point.r);

    let incident_phase = Complex64::from_polar(1.0, k * k_hat.dot(&rel));
    let incident = complexify(&e_hat) * incident_phase;
    let mut scattered = CVec3::zeros();
    let mut estimate = f64::INFINITY;
    let mut used = 0;
    for n in 1..=max_order {
        let (a_n, b_n) = coeffs[n - 1];
        let (p, qc) = plane_wave_coefficients(&pole, &e_rot, n);
        let mut term = CVec3::zeros();
        for m in 0..3 {
            term -= m_wave(&ang, &rad, n, m) * (b_n * p[m])
                + n_wave(&point, &ang, &rad, n, m, false) * (a_n * qc[m]);
        }
        if !term.iter().all(|c| c.is_finite()) {
            if a_n.norm() == 0.0 && b_n.norm() == 0.0 {
                estimate = 0.0;
                break;
            }
            return Err(PhotonicError::NotConverged {
                order: n,
                estimate: f64::INFINITY,
            });
        }
        scattered += term;
        used = n;
        // norms are rotation invariant, so compare in the rotated frame
        let total = (e_rot * incident_phase + scattered).norm();
        estimate = term.norm() / total.max(f64::MIN_POSITIVE);
        if estimate < NEGLIGIBLE {
            break;
        }
    }
    if estimate > SERIES_TOLERANCE {
        return Err(PhotonicError::NotConverged {
            order: used,
            estimate,
        });
    }
    let back = q.inverse().matrix().map(|c| Complex64::new(c, 0.0));
    Ok((incident + back * scattered, estimate))
}
