use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::{ObservableError, Result};
use crate::dynamics::DensityMatrix4;

/// Tolerance on the imaginary parts and negative real parts of the
/// concurrence-operator spectrum (exactly real and nonnegative in theory).
const SPECTRUM_TOLERANCE: f64 = 1e-8;

/// QR sweeps allowed before the Schur route gives way to the Hermitian one.
/// Exactly degenerate spectra (product states, for instance) can stall the
/// unshifted deflation in nalgebra indefinitely.
const SCHUR_MAX_ITERATIONS: usize = 500;

/// `sigma_y kron sigma_y` in the product basis.
fn spin_flip() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    let c = |x: f64| Complex64::new(x, 0.0);
    m[(0, 3)] = c(-1.0);
    m[(3, 0)] = c(-1.0);
    m[(1, 2)] = c(1.0);
    m[(2, 1)] = c(1.0);
    m
}

fn wootters(mut lambda: [f64; 4]) -> f64 {
    lambda.sort_by(|a, b| b.total_cmp(a));
    (lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0)
}

/// Wootters concurrence: `max(0, l1 - l2 - l3 - l4)` with `l_i` the square roots,
/// in decreasing order, of the eigenvalues of `rho (sy sy) rho^* (sy sy)`.
///
/// If the Schur iteration does not settle, the value comes from
/// [`concurrence_via_fidelity`], which has the same spectrum.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let r = rho.matrix();
    let y = spin_flip();
    let op = r * y * r.conjugate() * y;
    // complex Schur form: the eigenvalues sit on the diagonal of the triangular factor
    let Some(schur) = op.try_schur(f64::EPSILON, SCHUR_MAX_ITERATIONS) else {
        return Ok(concurrence_via_fidelity(rho));
    };
    let (_, t) = schur.unpack();
    let mut lambda = [0.0; 4];
    for (i, v) in t.diagonal().iter().enumerate() {
        if v.im.abs() > SPECTRUM_TOLERANCE || v.re < -SPECTRUM_TOLERANCE {
            return Err(ObservableError::InvalidSpectrum { value: *v });
        }
        lambda[i] = v.re.max(0.0).sqrt();
    }
    Ok(wootters(lambda))
}

fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = SymmetricEigen::new(*m);
    let d = eig.eigenvalues.map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0));
    eig.eigenvectors * Matrix4::from_diagonal(&d) * eig.eigenvectors.adjoint()
}

/// Concurrence from the Hermitian matrix `sqrt(sqrt(rho) rho~ sqrt(rho))`, whose
/// eigenvalues are the same `l_i`. Uses only Hermitian eigen-decompositions, so it
/// serves as an independent check of [`concurrence`].
pub fn concurrence_via_fidelity(rho: &DensityMatrix4) -> f64 {
    let y = spin_flip();
    let r = rho.matrix();
    let tilde = y * r.conjugate() * y;
    let s = hermitian_sqrt(r);
    let inner = s * tilde * s;
    let inner = (inner + inner.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(inner).eigenvalues;
    wootters([0, 1, 2, 3].map(|i| eig[i].max(0.0).sqrt()))
}

/// Concurrence of a density matrix restricted to its cross-shaped part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossShape {
    /// `2|rho_41| - 2 sqrt(rho_22 rho_33)`, relevant near the two-photon resonance.
    pub c1: f64,
    /// `2|rho_23| - 2 sqrt(rho_11 rho_44)`.
    pub c2: f64,
    /// `max(0, c1, c2)`.
    pub approx: f64,
    /// Largest modulus among the elements outside the diagonal and the
    /// `(1,4)`, `(2,3)` anti-diagonal.
    pub off_cross: f64,
}

pub fn concurrence_cross_approx(rho: &DensityMatrix4) -> CrossShape {
    let p = rho.populations();
    let c1 = 2.0 * rho.rho(4, 1).norm() - 2.0 * (p[1] * p[2]).max(0.0).sqrt();
    let c2 = 2.0 * rho.rho(2, 3).norm() - 2.0 * (p[0] * p[3]).max(0.0).sqrt();
    let mut off_cross: f64 = 0.0;
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j && i + j != 5 {
                off_cross = off_cross.max(rho.rho(i, j).norm());
            }
        }
    }
    CrossShape {
        c1,
        c2,
        approx: c1.max(c2).max(0.0),
        off_cross,
    }
}
