//! Single-emitter operators embedded in the two-emitter product space.

use nalgebra::Matrix4;
use num_complex::Complex64;

pub type Op4 = Matrix4<Complex64>;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Lowering operator of emitter `n` (0 or 1).
pub fn sigma(n: usize) -> Op4 {
    let mut s = Op4::zeros();
    match n {
        // |e1 x> -> |g1 x>: |3> -> |1>, |4> -> |2>
        0 => {
            s[(0, 2)] = one();
            s[(1, 3)] = one();
        }
        // |x e2> -> |x g2>: |2> -> |1>, |4> -> |3>
        1 => {
            s[(0, 1)] = one();
            s[(2, 3)] = one();
        }
        _ => panic!("emitter index must be 0 or 1"),
    }
    s
}

/// `(sigma^dag sigma - sigma sigma^dag) / 2`, eigenvalues +-1/2.
pub fn sigma_z(n: usize) -> Op4 {
    let s = sigma(n);
    let sd = s.adjoint();
    (sd * s - s * sd) * Complex64::new(0.5, 0.0)
}

/// Basis projector `|i><j|` with 1-based labels.
pub fn ket_bra(i: usize, j: usize) -> Op4 {
    let mut m = Op4::zeros();
    m[(i - 1, j - 1)] = one();
    m
}
