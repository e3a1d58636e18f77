use std::f64::consts::PI;

use log::warn;

use super::Kind;
use crate::env::{per_mode_brightness, RadarScenario, C};
use crate::error::Result;
use crate::quad::{integrate, QuadOptions};

/// Quantum Fisher information about the target angle carried by the mode at
/// offset `omega`, for a target at `phi`.
pub fn qfi_per_mode(phi: f64, omega: f64, scenario: &RadarScenario, kind: Kind) -> f64 {
    let d = scenario.receiver_separation;
    let w = scenario.carrier_angular_freq + omega;
    let t = (phi - scenario.compensation_angle).tan();
    let bracket = d * d * w * w * phi.cos().powi(2) / (C * C) + t * t;
    let classical = per_mode_brightness(omega, scenario) * scenario.kappa_eff(phi) / scenario.noise_occupation * bracket;
    classical * kind.fisher_factor()
}

/// Υ_φ = ½cos(φ−φ_c)·[d²(ω₀²+Δω²)cos²φ/c² + tan²(φ−φ_c)], the angle
/// sensitivity per unit SNR.
pub fn upsilon(scenario: &RadarScenario) -> f64 {
    let phi = scenario.target_angle;
    let dphi = phi - scenario.compensation_angle;
    let d = scenario.receiver_separation;
    let w0 = scenario.carrier_angular_freq;
    let dw = scenario.bandwidth;
    let t = dphi.tan();
    0.5 * dphi.cos() * (d * d * (w0 * w0 + dw * dw) * phi.cos().powi(2) / (C * C) + t * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiTotal {
    /// Closed-form total QFI, rad⁻².
    pub qfi: f64,
    pub upsilon: f64,
    /// T_d ∫ 𝓕^Ω dΩ/2π over ±k_max·Δω, by quadrature.
    pub integrated: f64,
    /// |integrated/qfi − 1|.
    pub discrepancy: f64,
}

/// Total QFI over the pulse spectrum, 2·SNR·Υ (classical) or 4·SNR·Υ
/// (quantum), together with its direct numerical integral.
pub fn qfi_total(scenario: &RadarScenario, kind: Kind, k_max: f64) -> Result<QfiTotal> {
    let ups = upsilon(scenario);
    let qfi = 2.0 * kind.fisher_factor() * scenario.snr() * ups;
    let half = k_max * scenario.bandwidth;
    let phi = scenario.target_angle;
    let opts = QuadOptions {
        initial_panels: 4,
        ..QuadOptions::relative(1e-10)
    };
    let int = integrate(|w| Ok(qfi_per_mode(phi, w, scenario, kind)), -half, half, &opts)?;
    let integrated = scenario.pulse_duration * int.value / (2.0 * PI);
    Ok(QfiTotal {
        qfi,
        upsilon: ups,
        integrated,
        discrepancy: (integrated / qfi - 1.0).abs(),
    })
}

/// Closed-form total QFI without the quadrature cross-check.
pub fn qfi_closed_form(scenario: &RadarScenario, kind: Kind) -> f64 {
    2.0 * kind.fisher_factor() * scenario.snr() * upsilon(scenario)
}

/// Cramér-Rao bound 1/QFI, in rad².
pub fn crb(scenario: &RadarScenario, kind: Kind) -> f64 {
    if scenario.compensation_angle != scenario.target_angle {
        warn!("Cramér-Rao bound evaluated with compensation angle ≠ target angle");
    }
    1.0 / qfi_closed_form(scenario, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{ghz_to_angular, test_scenario};

    #[test]
    fn upsilon_examples() {
        let sc = test_scenario();
        assert!((upsilon(&sc) / 1.395e8 - 1.0).abs() < 5e-3, "{}", upsilon(&sc));
        let sc10 = RadarScenario { receiver_separation: 10.0, ..sc };
        assert!((upsilon(&sc10) / 2.177e8 - 1.0).abs() < 5e-3, "{}", upsilon(&sc10));
    }

    #[test]
    fn upsilon_by_hand() {
        // φ = φ_c: Υ = d²(ω₀² + Δω²)cos²φ / 2c².
        let sc = test_scenario();
        let w0 = ghz_to_angular(100.0);
        let dw = ghz_to_angular(5.0);
        let hand = 64.0 * (w0 * w0 + dw * dw) * 0.1f64.cos().powi(2) / (2.0 * C * C);
        assert!((upsilon(&sc) - hand).abs() < 1e-6 * hand);
    }

    #[test]
    fn ratio_and_limits() {
        let sc = RadarScenario { compensation_angle: 0.05, ..test_scenario() };
        for w in [-3e10, 0.0, 1e10] {
            let c = qfi_per_mode(0.1, w, &sc, Kind::Classical);
            let q = qfi_per_mode(0.1, w, &sc, Kind::Quantum);
            assert_eq!(q / c, 2.0);
        }
        let aligned = test_scenario();
        let with_tan = qfi_per_mode(0.1, 0.0, &sc, Kind::Classical) / sc.kappa_eff(0.1);
        let without = qfi_per_mode(0.1, 0.0, &aligned, Kind::Classical) / aligned.kappa_eff(0.1);
        let t = 0.05f64.tan();
        let extra = per_mode_brightness(0.0, &sc) / sc.noise_occupation * t * t;
        assert!((with_tan - without - extra).abs() < 1e-9 * with_tan);
        let dark = RadarScenario { transmissivity: 1e-300, ..sc };
        assert!(qfi_per_mode(0.1, 0.0, &dark, Kind::Quantum) < 1e-280);
    }

    #[test]
    fn integral_matches_closed_form() {
        let sc = RadarScenario { compensation_angle: 0.0, ..test_scenario() };
        for kind in [Kind::Classical, Kind::Quantum] {
            let t = qfi_total(&sc, kind, 5.0).unwrap();
            assert!(t.discrepancy < 5e-3, "{}", t.discrepancy);
        }
    }

    #[test]
    fn crb_values() {
        let sc = test_scenario().with_snr(10.0);
        let c = crb(&sc, Kind::Classical);
        let q = crb(&sc, Kind::Quantum);
        assert!((2.0 * q / c - 1.0).abs() < 1e-12);
        let normalized = q / sc.reference_mse();
        // 1/(4·10·1.395e8) / 8.2247e-5
        assert!((normalized / 2.18e-6 - 1.0).abs() < 5e-3, "{normalized}");
        assert!((10.0 * normalized.log10() + 56.6).abs() < 0.05);
        assert!(crb(&sc.with_snr(1e-300), Kind::Quantum) > 1e280);
    }
}
