//! Bounds for a single receiver that sorts the returned beam into its
//! fundamental Hermite-Gaussian mode and the rest.
//!
//! Angle information comes from the projection cos φ and from the
//! fundamental-mode occupancy P₁(φ). The compensation angle is zero.

use super::zzb::{zzb, ZzbMode, ZzbOptions, ZzbResult};
use super::Kind;
use crate::env::RadarScenario;
use crate::error::{Error, Result};
use crate::sorter::{hg_occupation, occupancy_derivative, ApertureGeometry};

/// sin²φ + cos²φ·(dP₁/dφ)²/(P₁(1 − P₁)) for given P₁ and its slope.
pub fn fisher_bracket(phi: f64, occupancy: f64, slope: f64) -> Result<f64> {
    let q = 1.0 - occupancy;
    if !(occupancy > 0.0 && q > 0.0) {
        return Err(Error::SingularCrb { angle: phi, occupancy });
    }
    Ok(phi.sin().powi(2) + phi.cos().powi(2) * slope * slope / (occupancy * q))
}

/// [`fisher_bracket`] with the occupancy of the aperture's fundamental mode.
pub fn crb_bracket(phi: f64, chi: f64) -> Result<f64> {
    fisher_bracket(phi, hg_occupation(0, 0, phi, chi), occupancy_derivative(phi, chi))
}

/// Γ for hypotheses `x` and `x + zeta`:
/// (√cos x − √cos x′)² + 2√(cos x cos x′)·[(√P − √P′)² + (√(1−P) − √(1−P′))²]/2.
pub fn gamma(x: f64, zeta: f64, chi: f64) -> f64 {
    let (ca, cb) = (x.cos().max(0.0), (x + zeta).cos().max(0.0));
    // Past π/2 the projected beam vanishes and p₀₀ would turn negative.
    let occ = |a: f64| hg_occupation(0, 0, a, chi).clamp(0.0, 1.0);
    let (p, pp) = (occ(x), occ(x + zeta));
    let (ra, rb) = (ca.sqrt(), cb.sqrt());
    let d1 = p.sqrt() - pp.sqrt();
    let d2 = (1.0 - p).max(0.0).sqrt() - (1.0 - pp).max(0.0).sqrt();
    (ra - rb) * (ra - rb) + ra * rb * (d1 * d1 + d2 * d2)
}

/// The single-receiver bound family for one scenario and aperture.
#[derive(Debug, Clone, Copy)]
pub struct SingleReceiver<'a> {
    pub scenario: &'a RadarScenario,
    pub aperture: &'a ApertureGeometry,
    pub kind: Kind,
}

impl SingleReceiver<'_> {
    /// CCRB = 2cos φ/(SNR·bracket); the quantum bound is half of it.
    pub fn crb(&self) -> Result<f64> {
        let phi = self.scenario.target_angle;
        let bracket = crb_bracket(phi, self.aperture.chi)?;
        let fisher = self.kind.fisher_factor() * self.scenario.snr() / (2.0 * phi.cos()) * bracket;
        Ok(1.0 / fisher)
    }

    pub fn gamma(&self, x: f64, zeta: f64) -> f64 {
        gamma(x, zeta, self.aperture.chi)
    }

    /// ln of ½e^{−SNR·Γ/4} (classical) or ½e^{−SNR·Γ} (quantum).
    pub fn log_qcb(&self, x: f64, zeta: f64) -> f64 {
        let rate = match self.kind {
            Kind::Classical => 0.25,
            Kind::Quantum => 1.0,
        };
        -std::f64::consts::LN_2 - rate * self.scenario.snr() * self.gamma(x, zeta)
    }

    pub fn qcb(&self, x: f64, zeta: f64) -> f64 {
        self.log_qcb(x, zeta).exp()
    }

    /// ZZB over the prior [φ − Δφ/2, φ + Δφ/2].
    pub fn zzb(&self, mode: ZzbMode, opts: &ZzbOptions) -> Result<ZzbResult> {
        zzb(
            |x, z| Ok(self.qcb(x, z)),
            self.scenario.target_angle,
            self.scenario.prior_width,
            mode,
            opts,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleReceiverBounds {
    pub crb: f64,
    pub zzb: ZzbResult,
}

/// CRB and full-prior ZZB of the sorted single receiver.
pub fn single_receiver_bounds(
    scenario: &RadarScenario,
    aperture: &ApertureGeometry,
    kind: Kind,
    mode: ZzbMode,
    opts: &ZzbOptions,
) -> Result<SingleReceiverBounds> {
    let sr = SingleReceiver { scenario, aperture, kind };
    Ok(SingleReceiverBounds {
        crb: sr.crb()?,
        zzb: sr.zzb(mode, opts)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::test_scenario;
    use crate::sorter::aperture_geometry;

    fn unit_chi() -> ApertureGeometry {
        aperture_geometry(1e-3, 5e-4, 1.0, 2.0 * std::f64::consts::PI * 1e11).unwrap()
    }

    #[test]
    fn bracket_by_hand() {
        let phi = 1.0f64;
        let c2 = phi.cos().powi(2);
        let p = 2.0 * phi.cos() / (c2 + 1.0);
        let dp = -2.0 * phi.sin().powi(3) / (c2 + 1.0).powi(2);
        let hand = phi.sin().powi(2) + c2 * dp * dp / (p * (1.0 - p));
        let b = crb_bracket(phi, 1.0).unwrap();
        assert!((b - hand).abs() < 1e-12);
        assert!((b / 1.795 - 1.0).abs() < 5e-3, "{b}");
        let sc = RadarScenario { target_angle: 1.0, compensation_angle: 0.0, ..test_scenario() };
        let ap = unit_chi();
        let ccrb = SingleReceiver { scenario: &sc, aperture: &ap, kind: Kind::Classical }.crb().unwrap();
        assert!((ccrb * 1.661 * sc.snr() - 1.0).abs() < 5e-3);
    }

    #[test]
    fn gamma_is_finite_past_right_angle() {
        let g = gamma(1.5, 0.1, 0.3);
        assert!(g.is_finite() && g > 0.0);
    }

    #[test]
    fn quantum_halves_crb() {
        let sc = RadarScenario { target_angle: 0.7, compensation_angle: 0.0, ..test_scenario() };
        let ap = aperture_geometry(1e-3, 3e-4, 1.0, 2.0 * std::f64::consts::PI * 1e11).unwrap();
        let c = SingleReceiver { scenario: &sc, aperture: &ap, kind: Kind::Classical }.crb().unwrap();
        let q = SingleReceiver { scenario: &sc, aperture: &ap, kind: Kind::Quantum }.crb().unwrap();
        assert!((2.0 * q / c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_at_full_occupancy() {
        let sc = RadarScenario { target_angle: 0.0, compensation_angle: 0.0, ..test_scenario() };
        let ap = unit_chi();
        let r = SingleReceiver { scenario: &sc, aperture: &ap, kind: Kind::Quantum }.crb();
        assert!(matches!(r, Err(Error::SingularCrb { .. })));
    }

    #[test]
    fn gamma_limits() {
        assert_eq!(gamma(0.4, 0.0, 1.0), 0.0);
        let sc = test_scenario();
        let ap = unit_chi();
        let sr = SingleReceiver { scenario: &sc, aperture: &ap, kind: Kind::Quantum };
        assert_eq!(sr.qcb(0.4, 0.0), 0.5);
        // Direct form of Γ.
        let (x, z) = (0.9f64, 0.05f64);
        let (p, pp) = (hg_occupation(0, 0, x, 1.0), hg_occupation(0, 0, x + z, 1.0));
        let direct = x.cos() + (x + z).cos()
            - 2.0 * (x.cos() * (x + z).cos()).sqrt() * ((p * pp).sqrt() + ((1.0 - p) * (1.0 - pp)).sqrt());
        assert!((gamma(x, z, 1.0) - direct).abs() < 1e-12);
        let c = SingleReceiver { kind: Kind::Classical, ..sr };
        let ln2 = std::f64::consts::LN_2;
        assert!(((c.log_qcb(x, z) + ln2) * 4.0 - (sr.log_qcb(x, z) + ln2)).abs() < 1e-12);
    }

    #[test]
    fn flat_occupancy_leaves_projection_term() {
        for phi in [0.1, 0.5, 1.2] {
            assert_eq!(fisher_bracket(phi, 0.3, 0.0).unwrap(), phi.sin().powi(2));
        }
        assert_eq!(crb_bracket(0.0, 2.0).unwrap(), 0.0);
        assert!(fisher_bracket(0.3, 0.0, 0.1).is_err());
    }
}
