use nalgebra::SVector;
use num_complex::Complex64;

use super::density::DensityMatrix4;
use super::{DynamicsError, Liouvillian, Result};

/// Pivot ratio of the bordered system below which the steady state is treated
/// as not unique.
const PIVOT_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub rho: DensityMatrix4,
    /// `|L vec(rho)|_2 / |L|_F`, scale-free so that it does not depend on the
    /// frequency unit.
    pub residual: f64,
}

/// Unique stationary state of `L`.
///
/// `L` has a one-dimensional kernel for a dissipative system and its rows sum to
/// the trace functional times zero, so one row is redundant. That row is
/// replaced by `tr(rho) = 1` and the resulting system is solved by LU.
pub fn steady_state(l: &Liouvillian) -> Result<SteadyState> {
    let mut a = l.matrix;
    for col in 0..16 {
        a[(0, col)] = Complex64::new(0.0, 0.0);
    }
    for i in 0..4 {
        a[(0, 5 * i)] = Complex64::new(1.0, 0.0);
    }
    let mut b = SVector::<Complex64, 16>::zeros();
    b[0] = Complex64::new(1.0, 0.0);

    let lu = a.lu();
    let diag = lu.u().diagonal().map(|c| c.norm());
    let (lo, hi) = (diag.min(), diag.max());
    let pivot_ratio = if hi > 0.0 { lo / hi } else { 0.0 };
    if !(pivot_ratio > PIVOT_TOLERANCE) {
        return Err(DynamicsError::DegenerateSteadyState { pivot_ratio });
    }
    let x = lu
        .solve(&b)
        .ok_or(DynamicsError::DegenerateSteadyState { pivot_ratio })?;
    let rho = DensityMatrix4::regularize(DensityMatrix4::from_vec(&x))?;
    let residual = (l.matrix * rho.to_vec()).norm() / l.matrix.norm();
    Ok(SteadyState { rho, residual })
}
