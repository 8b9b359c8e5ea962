use nalgebra::Vector4;
use num_complex::Complex64;

use crate::photonic::{CouplingRates, EmitterPair};

/// Eigenstates of the undriven pair.
///
/// The single-excitation states are `|S> = a|3> + b|2>` and `|A> = a|2> - b|3>`
/// with `a = d / sqrt(d^2 + Omega12^2)`, `b = Omega12 / sqrt(d^2 + Omega12^2)` and
/// `d = delta/2 + sqrt((delta/2)^2 + Omega12^2)`. Their frequencies in the frame
/// of the mean transition are `omega_S = -omega_A = -sqrt((delta/2)^2 + Omega12^2)`,
/// so `|S>` continues into the lower emitter's excited state `|3>` as the
/// coupling vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledBasis {
    pub a: f64,
    pub b: f64,
    pub d: f64,
    pub ground: Vector4<Complex64>,
    pub excited: Vector4<Complex64>,
    pub symmetric: Vector4<Complex64>,
    pub antisymmetric: Vector4<Complex64>,
    pub omega_s: f64,
    pub omega_a: f64,
}

fn basis_vector(i: usize) -> Vector4<Complex64> {
    let mut v = Vector4::zeros();
    v[i - 1] = Complex64::new(1.0, 0.0);
    v
}

/// Coupled basis for the splitting of `pair` and the coherent coupling of `rates`
/// (in the same unit). For `delta = Omega12 = 0` every single-excitation
/// superposition is an eigenstate; the convention `|S> = |3>`, `|A> = |2>` is used.
pub fn coupled_basis(pair: &EmitterPair, rates: &CouplingRates) -> CoupledBasis {
    let half = 0.5 * pair.splitting;
    let o12 = rates.omega12;
    let w = half.hypot(o12);
    let d = half + w;
    let norm = d.hypot(o12);
    let (a, b) = if norm > 0.0 {
        (d / norm, o12 / norm)
    } else if half < 0.0 {
        // uncoupled with emitter 2 below emitter 1
        (0.0, 1.0)
    } else {
        (1.0, 0.0)
    };
    let (e2, e3) = (basis_vector(2), basis_vector(3));
    let c = |x: f64| Complex64::new(x, 0.0);
    CoupledBasis {
        a,
        b,
        d,
        ground: basis_vector(1),
        excited: basis_vector(4),
        symmetric: e3 * c(a) + e2 * c(b),
        antisymmetric: e2 * c(a) - e3 * c(b),
        omega_s: -w,
        omega_a: w,
    }
}
