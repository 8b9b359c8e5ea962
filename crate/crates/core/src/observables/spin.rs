use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::dynamics::operators::{sigma, sigma_z};
use crate::dynamics::DensityMatrix4;

/// Collective-spin moments and the two squeezing criteria for `S_x`.
///
/// `S_x = sum (s^dag + s)/2`, `S_y = sum (s^dag - s)/2i`, `S_z = sum sz`.
/// Because `S_x^2 = :S_x^2: - S_z/2`, the parameter
/// `xi_x = 2 Var(S_x) / |<S>|` falls below one exactly when the normally ordered
/// variance falls below `(<S_z> + |<S>|)/2`. That threshold vanishes when
/// `<S_x> = <S_y> = 0` and `<S_z> <= 0`, which is where the two criteria coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSqueezing {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    /// `|<S>|`.
    pub length: f64,
    /// `Var(S_x)`.
    pub variance: f64,
    /// `<:S_x^2:> - <S_x>^2`.
    pub normal_variance: f64,
    /// `xi_x`, undefined when `|<S>|` vanishes.
    pub xi: Option<f64>,
    /// `rho_22 + rho_33 - 2 Re rho_23`, the antisymmetric-state weight that adds
    /// to the cross-shaped estimate `4 <:dS^2:> = 1 - rho_11 + rho_44 - 2 Re rho_14 + [...]`.
    pub antisymmetric_term: f64,
}

/// Smallest `|<S>|` for which `xi_x` is reported.
const MIN_LENGTH: f64 = 1e-12;

impl SpinSqueezing {
    /// Normally ordered variance at which `xi_x = 1`.
    pub fn equivalence_threshold(&self) -> f64 {
        0.5 * (self.sz + self.length)
    }

    /// Whether `sign(xi_x - 1)` equals the sign of the normally ordered variance.
    /// `None` when `xi_x` is undefined.
    pub fn criteria_agree(&self) -> Option<bool> {
        self.xi
            .map(|xi| (xi - 1.0).signum() == self.normal_variance.signum())
    }

    /// Cross-shaped estimate of `<:dS^2:>` from the populations and the
    /// `rho_14`, `rho_23` coherences.
    pub fn cross_shape_estimate(rho: &DensityMatrix4) -> f64 {
        let p = rho.populations();
        0.25 * (1.0 - p[0] + p[3] - 2.0 * rho.rho(1, 4).re + p[1] + p[2] - 2.0 * rho.rho(2, 3).re)
    }
}

pub fn spin_squeezing(rho: &DensityMatrix4) -> SpinSqueezing {
    let jm: Matrix4<Complex64> = sigma(0) + sigma(1);
    let jp = jm.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let sx_op = (jp + jm) * half;
    let sy_op = (jp - jm) * Complex64::new(0.0, -0.5);
    let sz_op = sigma_z(0) + sigma_z(1);
    let sx = rho.expect(&sx_op).re;
    let sy = rho.expect(&sy_op).re;
    let sz = rho.expect(&sz_op).re;
    let sx2 = rho.expect(&(sx_op * sx_op)).re;
    let normal = rho.expect(&((jp * jp + jm * jm + jp * jm * Complex64::new(2.0, 0.0)) * Complex64::new(0.25, 0.0))).re;
    let length = (sx * sx + sy * sy + sz * sz).sqrt();
    let variance = sx2 - sx * sx;
    let p = rho.populations();
    SpinSqueezing {
        sx,
        sy,
        sz,
        length,
        variance,
        normal_variance: normal - sx * sx,
        xi: (length > MIN_LENGTH).then(|| 2.0 * variance / length),
        antisymmetric_term: p[1] + p[2] - 2.0 * rho.rho(2, 3).re,
    }
}
