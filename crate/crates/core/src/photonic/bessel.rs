//! Real-argument spherical Bessel functions for orders `0..=nmax`.

/// `j_n(x)` for `n = 0..=nmax`, `x > 0`.
///
/// Upward recurrence is unstable once `n > x`, so in that regime the values come
/// from Miller's downward recurrence normalised against `j_0`.
pub(crate) fn spherical_j(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let mut j = vec![0.0; nmax + 1];
    let (s, c) = x.sin_cos();
    if x >= nmax as f64 {
        j[0] = s / x;
        if nmax >= 1 {
            j[1] = s / (x * x) - c / x;
        }
        for n in 1..nmax {
            j[n + 1] = (2 * n + 1) as f64 / x * j[n] - j[n - 1];
        }
        return j;
    }
    let start = nmax + 20 + (2.0 * (nmax as f64 + x).sqrt()) as usize + x as usize;
    let mut upper = 0.0;
    let mut current = 1e-300;
    for n in (1..=start).rev() {
        let lower = (2 * n + 1) as f64 / x * current - upper;
        upper = current;
        current = lower;
        if n - 1 <= nmax {
            j[n - 1] = current;
        }
        if current.abs() > 1e250 {
            let scale = 1e-250;
            current *= scale;
            upper *= scale;
            for v in j.iter_mut().skip(n - 1) {
                *v *= scale;
            }
        }
    }
    // normalise against whichever of j_0, j_1 is better conditioned
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let norm = if j0.abs() >= j1.abs() || nmax == 0 {
        j0 / j[0]
    } else {
        j1 / j[1]
    };
    for v in &mut j {
        *v *= norm;
    }
    j
}

/// `y_n(x)` for `n = 0..=nmax`, `x > 0`, by upward recurrence (stable for `y_n`).
/// Values may overflow to `-inf` at high order and small argument.
pub(crate) fn spherical_y(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let mut y = vec![0.0; nmax + 1];
    let (s, c) = x.sin_cos();
    y[0] = -c / x;
    if nmax >= 1 {
        y[1] = -c / (x * x) - s / x;
    }
    for n in 1..nmax {
        y[n + 1] = (2 * n + 1) as f64 / x * y[n] - y[n - 1];
    }
    y
}
