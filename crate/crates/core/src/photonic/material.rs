use num_complex::Complex64;

use std::f64::consts::TAU as TWO_PI;

use super::{PhotonicError, Result};

/// One Lorentz oscillator term `strength * center^2 / (center^2 - w^2 - i width w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzPole {
    /// Dimensionless oscillator strength.
    pub strength: f64,
    /// Resonance angular frequency in rad/s.
    pub center: f64,
    /// Damping rate in rad/s.
    pub width: f64,
}

/// Drude-Lorentz permittivity model
///
/// `eps(w) = background - plasma^2 / (w^2 + i damping w)
///           + sum_j strength_j center_j^2 / (center_j^2 - w^2 - i width_j w)`
///
/// With nonnegative damping and strengths the imaginary part is nonnegative for
/// every positive frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub background: f64,
    /// Plasma frequency in rad/s.
    pub plasma: f64,
    /// Drude damping rate in rad/s.
    pub damping: f64,
    pub poles: Vec<LorentzPole>,
}

impl Material {
    pub fn drude(background: f64, plasma: f64, damping: f64) -> Self {
        Self {
            background,
            plasma,
            damping,
            poles: Vec::new(),
        }
    }

    /// Gold, single Drude term plus one Lorentz pole fitted to tabulated data
    /// over 500-1000 nm (Vial et al., Phys. Rev. B 71, 085416 (2005)).
    pub fn gold() -> Self {
        Self {
            background: 5.9673,
            plasma: TWO_PI * 2113.6e12,
            damping: TWO_PI * 15.92e12,
            poles: vec![LorentzPole {
                strength: 1.09,
                center: TWO_PI * 650.07e12,
                width: TWO_PI * 104.86e12,
            }],
        }
    }

    /// Complex relative permittivity at angular frequency `omega` (rad/s).
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(PhotonicError::NonPositiveFrequency(omega));
        }
        let w2 = omega * omega;
        let mut eps = Complex64::new(self.background, 0.0)
            - self.plasma * self.plasma / Complex64::new(w2, self.damping * omega);
        for pole in &self.poles {
            let c2 = pole.center * pole.center;
            eps += pole.strength * c2 / Complex64::new(c2 - w2, -pole.width * omega);
        }
        Ok(eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::SPEED_OF_LIGHT;
    use std::f64::consts::PI;

    fn omega_at(lambda: f64) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / lambda
    }

    #[test]
    fn lossless_drude_crosses_background_at_plasma_frequency() {
        let m = Material::drude(1.0, 2.0e15, 0.0);
        let eps = m.permittivity(2.0e15).unwrap();
        assert!((eps.re - 0.0).abs() < 1e-12);
        assert_eq!(eps.im, 0.0);
        // with a background the zero crossing sits at plasma / sqrt(background)
        let m = Material::drude(4.0, 2.0e15, 0.0);
        let eps = m.permittivity(1.0e15).unwrap();
        assert!(eps.re.abs() < 1e-12);
    }

    #[test]
    fn high_frequency_limit_is_background() {
        let gold = Material::gold();
        let eps = gold.permittivity(1.0e21).unwrap();
        assert!((eps.re - gold.background).abs() < 1e-6);
        assert!(eps.im.abs() < 1e-6);
    }

    #[test]
    fn rejects_nonpositive_frequency() {
        let gold = Material::gold();
        assert!(gold.permittivity(0.0).is_err());
        assert!(gold.permittivity(-1.0).is_err());
        assert!(gold.permittivity(f64::NAN).is_err());
    }

    #[test]
    fn gold_is_passive_across_the_spectrum() {
        let gold = Material::gold();
        let mut omega = 1e12;
        while omega < 1e18 {
            assert!(gold.permittivity(omega).unwrap().im >= 0.0, "omega = {omega}");
            omega *= 1.07;
        }
    }

    #[test]
    fn gold_near_780nm_matches_tabulated_constants() {
        // Johnson & Christy, Phys. Rev. B 6, 4370 (1972): n + ik at 1.64 eV (756 nm)
        // and 1.51 eV (821 nm). The Drude-Lorentz fit is quoted to a few percent in
        // the real part over this window; the small imaginary part is looser.
        let table = [(756.0e-9, 0.14, 4.542), (821.0e-9, 0.16, 5.083)];
        for (lambda, n, k) in table {
            let tab = Complex64::new(n, k).powi(2);
            let eps = Material::gold().permittivity(omega_at(lambda)).unwrap();
            assert!(eps.re < 0.0 && eps.im > 0.0);
            assert!((eps.re - tab.re).abs() / tab.re.abs() < 0.12, "{lambda}: {eps} vs {tab}");
            assert!((eps.im - tab.im).abs() / tab.im < 0.45, "{lambda}: {eps} vs {tab}");
        }
        let eps = Material::gold().permittivity(omega_at(780e-9)).unwrap();
        assert!(eps.re < -15.0 && eps.re > -30.0 && eps.im > 0.5 && eps.im < 3.0);
    }
}
