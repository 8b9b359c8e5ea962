use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;

use super::{DynamicsError, Result};

/// Tolerance on Hermiticity and trace of a valid state.
pub(crate) const STATE_TOLERANCE: f64 = 1e-10;
/// Eigenvalues down to minus this value are clipped to zero.
pub(crate) const CLIP_TOLERANCE: f64 = 1e-9;

/// Two-emitter density matrix in the product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    matrix: Matrix4<Complex64>,
}

impl DensityMatrix4 {
    /// `|1><1|`, both emitters in the ground state.
    pub fn ground() -> Self {
        Self::basis_state(1)
    }

    /// `|i><i|` with a 1-based label.
    pub fn basis_state(i: usize) -> Self {
        let mut m = Matrix4::zeros();
        m[(i - 1, i - 1)] = Complex64::new(1.0, 0.0);
        Self { matrix: m }
    }

    /// Projector onto a (not necessarily normalised) state vector.
    pub fn pure(psi: &Vector4<Complex64>) -> Self {
        let psi = psi / Complex64::new(psi.norm(), 0.0);
        Self {
            matrix: psi * psi.adjoint(),
        }
    }

    /// Wraps `matrix` after checking Hermiticity, unit trace and positivity.
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        let rho = Self { matrix };
        rho.validate()?;
        Ok(rho)
    }

    /// Hermitises, renormalises and clips slightly negative eigenvalues.
    /// Eigenvalues below `-1e-9` are an error.
    pub fn regularize(matrix: Matrix4<Complex64>) -> Result<Self> {
        let mut m = (matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let tr = m.trace().re;
        m /= Complex64::new(tr, 0.0);
        let eig = SymmetricEigen::new(m);
        let min = eig.eigenvalues.min();
        if min < -CLIP_TOLERANCE {
            return Err(DynamicsError::NotPhysical { min_eigenvalue: min });
        }
        if min < 0.0 {
            let clipped = eig.eigenvalues.map(|v| v.max(0.0));
            let total = clipped.sum();
            let d = Matrix4::from_diagonal(&clipped.map(|v| Complex64::new(v / total, 0.0)));
            m = eig.eigenvectors * d * eig.eigenvectors.adjoint();
            m = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
        }
        Ok(Self { matrix: m })
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        let herm = (m - m.adjoint()).camax();
        let tr = m.trace();
        if herm > STATE_TOLERANCE || (tr - 1.0).norm() > STATE_TOLERANCE {
            return Err(DynamicsError::NotPhysical {
                min_eigenvalue: f64::NAN,
            });
        }
        let min = self.min_eigenvalue();
        if min < -CLIP_TOLERANCE {
            return Err(DynamicsError::NotPhysical { min_eigenvalue: min });
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(h).eigenvalues.min()
    }

    /// Element `rho_ij = <i|rho|j>` with 1-based basis labels.
    #[inline]
    pub fn rho(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i - 1, j - 1)]
    }

    /// Diagonal element `rho_ii` (1-based).
    #[inline]
    pub fn population(&self, i: usize) -> f64 {
        self.matrix[(i - 1, i - 1)].re
    }

    pub fn populations(&self) -> [f64; 4] {
        [1, 2, 3, 4].map(|i| self.population(i))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    /// `tr(rho A)`.
    pub fn expect(&self, op: &Matrix4<Complex64>) -> Complex64 {
        (self.matrix * op).trace()
    }

    pub(crate) fn from_vec(v: &nalgebra::SVector<Complex64, 16>) -> Matrix4<Complex64> {
        Matrix4::from_column_slice(v.as_slice())
    }

    pub(crate) fn to_vec(&self) -> nalgebra::SVector<Complex64, 16> {
        nalgebra::SVector::from_column_slice(self.matrix.as_slice())
    }
}
