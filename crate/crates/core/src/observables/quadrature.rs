use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::dynamics::DensityMatrix4;
use crate::photonic::CouplingRates;

/// Lowest normalised variance reachable by two independent, identical emitters.
pub const INDEPENDENT_EMITTER_THRESHOLD: f64 = -0.125;

/// Normally ordered quadrature variance of one field component at the detector,
/// normalised by `|g1|^2 + |g2|^2` (that is, by `2|g|^2` for balanced detection).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub total: f64,
    /// Single-emitter contributions `(dE_i)^2` under the same normalisation.
    pub single: [f64; 2],
    /// Cross-correlation contribution `(dE_12)^2`.
    pub cross: f64,
    pub theta: f64,
    /// `phi_2 - phi_1` used for the evaluation.
    pub relative_phase: f64,
}

/// Candidate relative scattering phases for [`optimize_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseGrid {
    /// Keep the phases of the detection amplitudes.
    Detector,
    /// `phi_2 - phi_1 = 2 pi k / n`, `k = 0..n`.
    Uniform(usize),
}

/// The variance as `A + Re[B exp(2 i theta)]`, split by origin.
struct Harmonic {
    a: [f64; 3],
    b: [Complex64; 3],
}

fn harmonic(rho: &DensityMatrix4, mag: [f64; 2], phi: [f64; 2]) -> Harmonic {
    let m1 = rho.rho(3, 1) + rho.rho(4, 2);
    let m2 = rho.rho(2, 1) + rho.rho(4, 3);
    let n1 = rho.population(3) + rho.population(4);
    let n2 = rho.population(2) + rho.population(4);
    let norm = mag[0] * mag[0] + mag[1] * mag[1];
    let w1 = 2.0 * mag[0] * mag[0] / norm;
    let w2 = 2.0 * mag[1] * mag[1] / norm;
    let w12 = 2.0 * mag[0] * mag[1] / norm;
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let flip = rho.rho(3, 2) - m2.conj() * m1;
    let pair = rho.rho(4, 1) - m2 * m1;
    Harmonic {
        a: [
            w1 * (n1 - m1.norm_sqr()),
            w2 * (n2 - m2.norm_sqr()),
            w12 * 2.0 * (e(phi[0] - phi[1]) * flip).re,
        ],
        b: [
            -e(2.0 * phi[0]) * m1 * m1 * w1,
            -e(2.0 * phi[1]) * m2 * m2 * w2,
            e(phi[0] + phi[1]) * pair * (2.0 * w12),
        ],
    }
}

fn evaluate(h: &Harmonic, theta: f64, relative_phase: f64) -> QuadratureResult {
    let rot = Complex64::from_polar(1.0, 2.0 * theta);
    let part = |i: usize| h.a[i] + (h.b[i] * rot).re;
    let single = [part(0), part(1)];
    let cross = part(2);
    QuadratureResult {
        total: single[0] + single[1] + cross,
        single,
        cross,
        theta,
        relative_phase,
    }
}

/// Variance at quadrature angle `theta` with the detection amplitudes of `rates`.
///
/// Uses `<s1> = rho_31 + rho_42`, `<s2> = rho_21 + rho_43`,
/// `<s2^dag s1> = rho_32`, `<s2 s1> = rho_41`:
///
/// * `(dE_i)^2 = <s_i^dag s_i> - |<s_i>|^2 - Re[exp(2i(theta + phi_i)) <s_i>^2]`
/// * `(dE_12)^2 = 2 Re[exp(i(phi_1 - phi_2)) (<s2^dag s1> - <s2>^* <s1>)
///                + exp(i(2 theta + phi_1 + phi_2)) (<s2 s1> - <s2><s1>)]`
///
/// each weighted by `2|g_i|^2`, `2|g_1 g_2|` and divided by `|g1|^2 + |g2|^2`.
pub fn quadrature_variance(rho: &DensityMatrix4, rates: &CouplingRates, theta: f64) -> QuadratureResult {
    let phi = rates.detection_phase();
    let h = harmonic(rho, rates.detection_abs(), phi);
    evaluate(&h, theta, phi[1] - phi[0])
}

/// Minimum over the quadrature angle (in closed form) and over the candidate
/// relative phases. The first minimum in grid order wins ties.
pub fn optimize_quadrature(rho: &DensityMatrix4, rates: &CouplingRates, grid: PhaseGrid) -> QuadratureResult {
    let mag = rates.detection_abs();
    let phi = rates.detection_phase();
    let candidates: Vec<f64> = match grid {
        PhaseGrid::Detector => vec![phi[1] - phi[0]],
        PhaseGrid::Uniform(n) => (0..n.max(1)).map(|k| TAU * k as f64 / n.max(1) as f64).collect(),
    };
    let mut best: Option<QuadratureResult> = None;
    for rel in candidates {
        let h = harmonic(rho, mag, [phi[0], phi[0] + rel]);
        let b: Complex64 = h.b.iter().sum();
        // A + Re[B e^{2i theta}] is smallest where B e^{2i theta} = -|B|
        let theta = ((PI - b.arg()) / 2.0).rem_euclid(PI);
        let r = evaluate(&h, theta, rel);
        if best.is_none_or(|x| r.total < x.total) {
            best = Some(r);
        }
    }
    best.expect("at least one candidate phase")
}

/// Effective two-level estimate of the normalised variance near the two-photon
/// resonance, valid when the single-photon coherences are small.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelSqueezing {
    /// `1 - rho_11 + rho_44 + 2 Re[exp(-i(2 theta + phi_1 + phi_2)) rho_14]`.
    pub value: f64,
    /// Optimum over `theta`: `1 - rho_11 + rho_44 - 2|rho_14|`.
    pub optimum: f64,
    /// Lower bound `-2|rho_14|`.
    pub bound: f64,
    /// `|rho_23| / |rho_14|`; the estimate needs this to be small.
    pub validity: f64,
}

pub fn squeezing_two_level_approx(rho: &DensityMatrix4, phases: [f64; 2], theta: f64) -> TwoLevelSqueezing {
    let base = 1.0 - rho.population(1) + rho.population(4);
    let r14 = rho.rho(1, 4);
    let phase = Complex64::from_polar(1.0, -(2.0 * theta + phases[0] + phases[1]));
    TwoLevelSqueezing {
        value: base + 2.0 * (phase * r14).re,
        optimum: base - 2.0 * r14.norm(),
        bound: -2.0 * r14.norm(),
        validity: rho.rho(2, 3).norm() / r14.norm(),
    }
}
