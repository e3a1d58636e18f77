//! Per-mode distinguishability of two target angles.

use crate::env::{per_mode_brightness, RadarScenario, C};

/// sin(b) − sin(a) without cancellation for b ≈ a.
pub(crate) fn sin_difference(a: f64, b: f64) -> f64 {
    2.0 * (0.5 * (a + b)).cos() * (0.5 * (b - a)).sin()
}

/// (√a − √b)² + 4√(ab)·w, with `w` supplied by the caller.
fn split_form(ca: f64, cb: f64, w: f64) -> f64 {
    let (ra, rb) = (ca.max(0.0).sqrt(), cb.max(0.0).sqrt());
    (ra - rb) * (ra - rb) + 4.0 * ra * rb * w
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFidelity {
    /// Θ, dimensionless and non-negative.
    pub theta: f64,
    /// 1 − κ S Θ / N_B.
    pub classical: f64,
    /// 1 − 2κ S Θ / N_B.
    pub quantum: f64,
}

/// Θ for targets at `phi` and `phi + eps` in the mode at offset `omega`:
///
/// cos(φ−φ_c) + cos(φ−φ_c+ε) − 2√(cos(φ−φ_c) cos(φ−φ_c+ε))·cos[(ω₀+Ω) d (sin(φ+ε) − sin φ)/2c].
///
/// Evaluated as (√a − √b)² + 4√(ab) sin²(δ/2) so that Θ ≥ 0 and small-ε
/// values keep their relative precision.
pub fn theta_fidelity(phi: f64, phi_c: f64, eps: f64, omega: f64, scenario: &RadarScenario) -> ModeFidelity {
    let ca = (phi - phi_c).cos();
    let cb = (phi - phi_c + eps).cos();
    let w = scenario.carrier_angular_freq + omega;
    let delta = w * scenario.receiver_separation * sin_difference(phi, phi + eps) / (2.0 * C);
    let h = (0.5 * delta).sin();
    let theta = split_form(ca, cb, h * h);
    let x = scenario.transmissivity * per_mode_brightness(omega, scenario) * theta / scenario.noise_occupation;
    ModeFidelity {
        theta,
        classical: 1.0 - x,
        quantum: 1.0 - 2.0 * x,
    }
}

/// Spectrum-averaged Θ̄ of the long-pulse Chernoff exponents; the carrier
/// fringe is damped by exp[−d²Δω²(Δ sin)²/8c²].
pub fn theta_bar(phi: f64, zeta: f64, scenario: &RadarScenario) -> f64 {
    let phi_c = scenario.compensation_angle;
    let ca = (phi - phi_c).cos();
    let cb = (phi - phi_c + zeta).cos();
    let ds = sin_difference(phi, phi + zeta);
    let d = scenario.receiver_separation;
    let damping = d * d * scenario.bandwidth * scenario.bandwidth / (8.0 * C * C) * ds * ds;
    let envelope = (-damping).exp();
    let h = (scenario.carrier_angular_freq * d * ds / (4.0 * C)).sin();
    // 1 − E cos δ = (1 − E) + 2E sin²(δ/2)
    let w = 0.5 * (-(-damping).exp_m1() + 2.0 * envelope * h * h);
    split_form(ca, cb, w)
}
