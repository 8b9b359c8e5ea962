use num_complex::Complex64;

use super::bessel::{spherical_j, spherical_y};

/// Mie coefficients `(a_n, b_n)` for `n = 1..=nmax` of a homogeneous sphere with
/// relative refractive index `m` and size parameter `x = k_host * radius`.
///
/// Conventions follow Bohren & Huffman: `a_n` multiplies the electric (`N`) and
/// `b_n` the magnetic (`M`) outgoing partial waves. The logarithmic derivative
/// `D_n(mx)` is obtained by downward recurrence, which stays accurate for lossy
/// metals with large `|m|`.
pub fn mie_coefficients(m: Complex64, x: f64, nmax: usize) -> Vec<(Complex64, Complex64)> {
    let z = m * x;
    let start = nmax.max(z.norm().ceil() as usize) + 16;
    let mut d = vec![Complex64::new(0.0, 0.0); start + 1];
    for n in (1..=start).rev() {
        let nz = n as f64 / z;
        d[n - 1] = nz - 1.0 / (d[n] + nz);
    }
    let j = spherical_j(nmax, x);
    let y = spherical_y(nmax, x);
    (1..=nmax)
        .map(|n| {
            let psi = x * j[n];
            let psi_prev = x * j[n - 1];
            let xi = Complex64::new(x * j[n], x * y[n]);
            let xi_prev = Complex64::new(x * j[n - 1], x * y[n - 1]);
            let nx = n as f64 / x;
            let ta = d[n] / m + nx;
            let tb = d[n] * m + nx;
            let a = (ta * psi - psi_prev) / (ta * xi - xi_prev);
            let b = (tb * psi - psi_prev) / (tb * xi - xi_prev);
            (sanitize(a), sanitize(b))
        })
        .collect()
}

/// Very high orders at small size parameter give `psi / xi -> 0` through an
/// overflowing denominator; map the resulting NaN to an exact zero.
fn sanitize(c: Complex64) -> Complex64 {
    if c.is_finite() {
        c
    } else {
        Complex64::new(0.0, 0.0)
    }
}
