use nalgebra::SMatrix;
use num_complex::Complex64;

use super::operators::{sigma, sigma_z, Op4};
use super::{DriveDetection, DynamicsError, Result};
use crate::photonic::CouplingRates;

pub type Super = SMatrix<Complex64, 16, 16>;

/// Generator of `d vec(rho)/dt = L vec(rho)` on column-stacked density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    pub matrix: Super,
    /// Smallest single-emitter decay rate, sets the time scale of relaxation.
    pub slowest_decay: f64,
    /// Largest single-emitter decay rate, sets the scale of `d rho/dt`.
    pub fastest_decay: f64,
}

fn kron(a: &Op4, b: &Op4) -> Super {
    let mut out = Super::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..4 {
                for l in 0..4 {
                    out[(4 * i + k, 4 * j + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Superoperator of `rho -> A rho B`.
fn sandwich(a: &Op4, b: &Op4) -> Super {
    kron(&b.transpose(), a)
}

/// Superoperator of `rho -> rate/2 (2 A rho B^dag - B^dag A rho - rho B^dag A)`.
fn dissipator(rate: f64, a: &Op4, b: &Op4) -> Super {
    let id = Op4::identity();
    let bd = b.adjoint();
    let bda = bd * a;
    (sandwich(a, &bd) * Complex64::new(2.0, 0.0) - sandwich(&bda, &id) - sandwich(&id, &bda))
        * Complex64::new(0.5 * rate, 0.0)
}

/// Assembles the Lindblad generator
///
/// `L rho = -i[H, rho] + sum_mn gamma_mn/2 (2 s_n rho s_m^dag - s_m^dag s_n rho - rho s_m^dag s_n)
///          + sum_m gamma*_m (2 sz_m rho sz_m - sz_m^2 rho - rho sz_m^2)`
///
/// With `sz = (s^dag s - s s^dag)/2` the dephasing term damps each single-emitter
/// coherence at an extra rate `gamma*_m`. A single driven emitter then loses all
/// quadrature squeezing exactly when `gamma* >= gamma/2`.
pub fn build_liouvillian(h: &Op4, rates: &CouplingRates, drive: &DriveDetection) -> Result<Liouvillian> {
    drive.validate()?;
    let bound = (rates.gamma[0] * rates.gamma[1]).max(0.0).sqrt();
    if rates.gamma.iter().any(|g| !(*g >= 0.0) || !g.is_finite())
        || !rates.gamma12.is_finite()
        || rates.gamma12.abs() > bound * (1.0 + 1e-12)
    {
        return Err(DynamicsError::NotPositive {
            gamma12: rates.gamma12,
            bound,
        });
    }
    let id = Op4::identity();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut l = (sandwich(h, &id) - sandwich(&id, h)) * minus_i;
    let s = [sigma(0), sigma(1)];
    let decay = [[rates.gamma[0], rates.gamma12], [rates.gamma12, rates.gamma[1]]];
    for m in 0..2 {
        for n in 0..2 {
            if decay[m][n] != 0.0 {
                // jump s_n, left partner s_m^dag
                l += dissipator(decay[m][n], &s[n], &s[m]);
            }
        }
        if drive.dephasing[m] > 0.0 {
            let z = sigma_z(m);
            l += dissipator(2.0 * drive.dephasing[m], &z, &z);
        }
    }
    Ok(Liouvillian {
        matrix: l,
        slowest_decay: rates.gamma[0].min(rates.gamma[1]),
        fastest_decay: rates.gamma[0].max(rates.gamma[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DensityMatrix4;
    use nalgebra::Matrix4;

    fn apply(l: &Liouvillian, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        let v = nalgebra::SVector::<Complex64, 16>::from_column_slice(rho.as_slice());
        Matrix4::from_column_slice((l.matrix * v).as_slice())
    }

    #[test]
    fn sandwich_matches_matrix_products() {
        let a = Op4::from_fn(|i, j| Complex64::new((i + 2 * j) as f64, (i * j) as f64 - 1.0));
        let b = Op4::from_fn(|i, j| Complex64::new(1.0 - (3 * i + j) as f64, 0.5 * i as f64));
        let x = Op4::from_fn(|i, j| Complex64::new((i as f64).sin(), (j as f64).cos()));
        let v = nalgebra::SVector::<Complex64, 16>::from_column_slice(x.as_slice());
        let got = Matrix4::from_column_slice((sandwich(&a, &b) * v).as_slice());
        assert!((got - a * x * b).norm() < 1e-12);
    }

    #[test]
    fn independent_emitter_coherence_decays_at_half_rate() {
        let rates = CouplingRates::injected([1.3, 2.1], 0.0, 0.0, [1.0; 2]);
        let l = build_liouvillian(&Op4::zeros(), &rates, &DriveDetection::new(0.0, 0.0)).unwrap();
        // rho_12 = <g1g2| rho |g1e2> is a coherence of emitter 2 only
        let out = apply(&l, &crate::dynamics::operators::ket_bra(1, 2));
        assert!((out[(0, 1)] + Complex64::new(2.1 / 2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn dephasing_leaves_populations_and_adds_its_rate_to_coherences() {
        let rates = CouplingRates::injected([1.0, 1.0], 0.0, 0.0, [1.0; 2]);
        let drive = DriveDetection::new(0.0, 0.0).with_dephasing([0.7, 0.0]);
        let l = build_liouvillian(&Op4::zeros(), &rates, &drive).unwrap();
        let mut rho = DensityMatrix4::basis_state(3).matrix().clone();
        let pure = build_liouvillian(&Op4::zeros(), &rates, &DriveDetection::new(0.0, 0.0)).unwrap();
        assert!((apply(&l, &rho) - apply(&pure, &rho)).norm() < 1e-14);
        rho = crate::dynamics::operators::ket_bra(1, 3);
        let out = apply(&l, &rho);
        assert!((out[(0, 2)] + Complex64::new(0.5 + 0.7, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_decay_matrix() {
        let rates = CouplingRates::injected([1.0, 1.0], 1.2, 0.0, [1.0; 2]);
        let err = build_liouvillian(&Op4::zeros(), &rates, &DriveDetection::new(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, DynamicsError::NotPositive { .. }));
    }
}
