use nalgebra::SVector;
use num_complex::Complex64;

use super::density::DensityMatrix4;
use super::{DynamicsError, Liouvillian, Result};

type State = SVector<Complex64, 16>;

/// Step control for the embedded Dormand-Prince 5(4) integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    /// Give up after `horizon / slowest_decay`.
    pub horizon: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Converged once `max |d rho/dt| < derivative_tolerance * fastest_decay`.
    pub derivative_tolerance: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            horizon: 200.0,
            rtol: 1e-10,
            atol: 1e-13,
            derivative_tolerance: 1e-11,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub rho: DensityMatrix4,
    pub time: f64,
    pub steps: usize,
    pub derivative: f64,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

struct Integrator<'a> {
    l: &'a Liouvillian,
    opts: PropagationOptions,
    /// Steps are kept well inside the stability region, where the embedded
    /// error estimate stays reliable even after the transient has died out.
    h_cap: f64,
    y: State,
    k1: State,
    t: f64,
    h: f64,
    steps: usize,
}

impl<'a> Integrator<'a> {
    fn new(l: &'a Liouvillian, rho0: &DensityMatrix4, opts: PropagationOptions) -> Self {
        let y = rho0.to_vec();
        let k1 = l.matrix * y;
        let row_sum = (0..16)
            .map(|i| l.matrix.row(i).iter().map(|c| c.norm()).sum::<f64>())
            .fold(f64::MIN_POSITIVE, f64::max);
        let scale = l.matrix.camax().max(f64::MIN_POSITIVE);
        Self {
            l,
            opts,
            h_cap: 1.0 / row_sum,
            y,
            k1,
            t: 0.0,
            h: 0.01 / scale,
            steps: 0,
        }
    }

    fn f(&self, y: &State) -> State {
        self.l.matrix * y
    }

    /// One accepted step of at most `h_max`.
    fn step(&mut self, h_max: f64) {
        loop {
            let h = self.h.min(h_max).min(self.h_cap);
            let y = &self.y;
            let k1 = &self.k1;
            let k2 = self.f(&(y + k1 * cr(h * A21)));
            let k3 = self.f(&(y + k1 * cr(h * A31) + k2 * cr(h * A32)));
            let k4 = self.f(&(y + k1 * cr(h * A41) + k2 * cr(h * A42) + k3 * cr(h * A43)));
            let k5 = self.f(
                &(y + k1 * cr(h * A51) + k2 * cr(h * A52) + k3 * cr(h * A53) + k4 * cr(h * A54)),
            );
            let k6 = self.f(
                &(y + k1 * cr(h * A61)
                    + k2 * cr(h * A62)
                    + k3 * cr(h * A63)
                    + k4 * cr(h * A64)
                    + k5 * cr(h * A65)),
            );
            let y_new = y
                + k1 * cr(h * B1)
                + k3 * cr(h * B3)
                + k4 * cr(h * B4)
                + k5 * cr(h * B5)
                + k6 * cr(h * B6);
            let k7 = self.f(&y_new);
            let err = k1 * cr(h * E1)
                + k3 * cr(h * E3)
                + k4 * cr(h * E4)
                + k5 * cr(h * E5)
                + k6 * cr(h * E6)
                + k7 * cr(h * E7);
            let mut sum = 0.0;
            for i in 0..16 {
                let sc = self.opts.atol + self.opts.rtol * y[i].norm().max(y_new[i].norm());
                sum += (err[i].norm() / sc).powi(2);
            }
            let e = (sum / 16.0).sqrt();
            let factor = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
            if e <= 1.0 {
                self.t += h;
                self.y = y_new;
                self.k1 = k7;
                self.steps += 1;
                if h == self.h.min(self.h_cap) {
                    self.h = (h * factor).min(self.h_cap);
                }
                return;
            }
            self.h = h * factor.min(1.0);
        }
    }

    fn state(&self) -> Result<DensityMatrix4> {
        DensityMatrix4::regularize(DensityMatrix4::from_vec(&self.y))
    }
}

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Integrates `d rho/dt = L rho` from `rho0` until the time derivative falls
/// below `derivative_tolerance` (relative to the fastest decay rate). Fails if
/// that does not happen within `horizon / slowest_decay`.
pub fn propagate_to_steady_state(
    l: &Liouvillian,
    rho0: &DensityMatrix4,
    opts: &PropagationOptions,
) -> Result<Propagation> {
    let mut it = Integrator::new(l, rho0, *opts);
    let t_end = opts.horizon / l.slowest_decay;
    let target = opts.derivative_tolerance * l.fastest_decay;
    loop {
        let derivative = it.k1.camax();
        if derivative < target {
            return Ok(Propagation {
                rho: it.state()?,
                time: it.t,
                steps: it.steps,
                derivative,
            });
        }
        if !(it.t < t_end) {
            return Err(DynamicsError::NotConverged {
                time: it.t,
                derivative,
            });
        }
        it.step(t_end - it.t);
    }
}

/// State at time `t` starting from `rho0`.
pub fn evolve(
    l: &Liouvillian,
    rho0: &DensityMatrix4,
    t: f64,
    opts: &PropagationOptions,
) -> Result<DensityMatrix4> {
    let mut it = Integrator::new(l, rho0, *opts);
    while it.t < t {
        it.step(t - it.t);
    }
    it.state()
}
