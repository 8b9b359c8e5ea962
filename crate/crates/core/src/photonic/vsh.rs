//! Normalised vector spherical wave functions restricted to azimuthal orders
//! `m in {-1, 0, 1}`.
//!
//! All series in this crate are evaluated in a rotated frame in which the source
//! point (or the incident wave vector) lies on the +z axis. There the angular
//! functions with `|m| > 1` vanish identically, so three azimuthal orders suffice.

use std::f64::consts::PI;

use nalgebra::{Rotation3, Vector3};
use num_complex::Complex64;

use super::bessel::{spherical_j, spherical_y};

pub(crate) type CVec3 = Vector3<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn complexify(v: &Vector3<f64>) -> CVec3 {
    v.map(|c| Complex64::new(c, 0.0))
}

/// Rotation taking the direction of `v` onto +z.
pub(crate) fn rotation_to_pole(v: &Vector3<f64>) -> Rotation3<f64> {
    let z = Vector3::z();
    Rotation3::rotation_between(v, &z)
        .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), PI))
}

/// Spherical coordinates and unit vectors of a point. On the polar axis the
/// azimuth is taken as zero so that the unit vectors stay well defined.
pub(crate) struct Point {
    pub r: f64,
    pub r_hat: Vector3<f64>,
    theta_hat: Vector3<f64>,
    phi_hat: Vector3<f64>,
    mu: f64,
    sin_theta: f64,
    phi: f64,
}

impl Point {
    pub fn new(p: &Vector3<f64>) -> Self {
        let r = p.norm();
        let rho = p.x.hypot(p.y);
        let phi = if rho > 0.0 { p.y.atan2(p.x) } else { 0.0 };
        let mu = (p.z / r).clamp(-1.0, 1.0);
        let sin_theta = rho / r;
        let (sp, cp) = phi.sin_cos();
        Self {
            r,
            r_hat: Vector3::new(sin_theta * cp, sin_theta * sp, mu),
            theta_hat: Vector3::new(mu * cp, mu * sp, -sin_theta),
            phi_hat: Vector3::new(-sp, cp, 0.0),
            mu,
            sin_theta,
            phi,
        }
    }
}

/// Angular factors `Y_nm`, `X_nm` and `r_hat x X_nm` for `m = -1, 0, 1`
/// (array index `m + 1`) and orders `1..=nmax` (vector index `n - 1`).
pub(crate) struct Angular {
    pub y: Vec<[Complex64; 3]>,
    pub x: Vec<[CVec3; 3]>,
    pub rx: Vec<[CVec3; 3]>,
}

impl Angular {
    pub fn new(point: &Point, nmax: usize) -> Self {
        let mu = point.mu;
        let st = point.sin_theta;
        let th = complexify(&point.theta_hat);
        let ph = complexify(&point.phi_hat);
        let e_plus = Complex64::from_polar(1.0, point.phi);
        let e_minus = e_plus.conj();
        let mut y = Vec::with_capacity(nmax);
        let mut x = Vec::with_capacity(nmax);
        let mut rx = Vec::with_capacity(nmax);
        // Legendre P_n and pi_n = dP_n/dmu by three-term recurrence
        let (mut p_prev, mut p) = (1.0, mu);
        let (mut pi_prev, mut pi) = (0.0, 1.0);
        for n in 1..=nmax {
            if n > 1 {
                let nf = n as f64;
                let p_next = ((2.0 * nf - 1.0) * mu * p - (nf - 1.0) * p_prev) / nf;
                p_prev = p;
                p = p_next;
                let pi_next = ((2.0 * nf - 1.0) * mu * pi - nf * pi_prev) / (nf - 1.0);
                pi_prev = pi;
                pi = pi_next;
            }
            let nf = n as f64;
            let tau = nf * mu * pi - (nf + 1.0) * pi_prev;
            let nn = (nf * (nf + 1.0)).sqrt();
            let c0 = ((2.0 * nf + 1.0) / (4.0 * PI)).sqrt();
            let c1 = c0 / nn;
            let p1 = st * pi;
            let y0 = Complex64::new(c0 * p, 0.0);
            let x0 = ph * (I * c0 * p1 / nn);
            let rx0 = th * (-I * c0 * p1 / nn);
            let mut ys = [Complex64::new(0.0, 0.0); 3];
            let mut xs = [CVec3::zeros(); 3];
            let mut rxs = [CVec3::zeros(); 3];
            ys[1] = y0;
            xs[1] = x0;
            rxs[1] = rx0;
            for (idx, sign, e) in [(0usize, -1.0, e_minus), (2usize, 1.0, e_plus)] {
                let a = e * (c1 / nn);
                ys[idx] = e * (c1 * p1);
                xs[idx] = (th * Complex64::new(-sign * pi, 0.0) + ph * (-I * tau)) * a;
                rxs[idx] = (ph * Complex64::new(-sign * pi, 0.0) + th * (I * tau)) * a;
            }
            y.push(ys);
            x.push(xs);
            rx.push(rxs);
        }
        Self { y, x, rx }
    }

    /// Complex-conjugated angular factors, used for the source-point functions.
    pub fn conj(&self) -> Self {
        Self {
            y: self.y.iter().map(|a| a.map(|c| c.conj())).collect(),
            x: self.x.iter().map(|a| a.map(|v| v.map(|c| c.conj()))).collect(),
            rx: self.rx.iter().map(|a| a.map(|v| v.map(|c| c.conj()))).collect(),
        }
    }
}

/// Radial factors `z_n`, `z_n / rho` and `(rho z_n)' / rho` at `rho = k r`.
pub(crate) struct Radial {
    z: Vec<Complex64>,
    rho: f64,
}

pub(crate) enum RadialKind {
    Regular,
    Outgoing,
}

impl Radial {
    pub fn new(kind: RadialKind, nmax: usize, rho: f64) -> Self {
        let j = spherical_j(nmax, rho);
        let z = match kind {
            RadialKind::Regular => j.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            RadialKind::Outgoing => {
                let y = spherical_y(nmax, rho);
                j.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b)).collect()
            }
        };
        Self { z, rho }
    }

    fn factors(&self, n: usize) -> (Complex64, Complex64, Complex64) {
        let z = self.z[n];
        let over = z / self.rho;
        (z, over, self.z[n - 1] - n as f64 * over)
    }
}

/// `M_nm` (or its source-point form when `ang` holds conjugated factors).
pub(crate) fn m_wave(ang: &Angular, rad: &Radial, n: usize, m: usize) -> CVec3 {
    ang.x[n - 1][m] * rad.z[n]
}

/// `N_nm`. For the source-point form pass conjugated factors and `tilde = true`,
/// which also conjugates the explicit `i` of the radial component.
pub(crate) fn n_wave(
    point: &Point,
    ang: &Angular,
    rad: &Radial,
    n: usize,
    m: usize,
    tilde: bool,
) -> CVec3 {
    let (_, over, dz) = rad.factors(n);
    let nn = ((n * (n + 1)) as f64).sqrt();
    let unit = if tilde { -I } else { I };
    complexify(&point.r_hat) * (unit * nn * over * ang.y[n - 1][m]) + ang.rx[n - 1][m] * dz
}

/// Expansion coefficients of a unit plane wave `e exp(i k z)` travelling along +z:
///
/// `e exp(i k z) = sum_nm p_nm M^(1)_nm + q_nm N^(1)_nm`.
pub(crate) fn plane_wave_coefficients(
    pole: &Angular,
    e: &CVec3,
    n: usize,
) -> ([Complex64; 3], [Complex64; 3]) {
    let i_n = I.powu(n as u32);
    let mut p = [Complex64::new(0.0, 0.0); 3];
    let mut q = [Complex64::new(0.0, 0.0); 3];
    for m in 0..3 {
        p[m] = 4.0 * PI * i_n * pole.x[n - 1][m].dot(e);
        q[m] = -4.0 * PI * i_n * I * pole.rx[n - 1][m].dot(e);
    }
    (p, q)
}
