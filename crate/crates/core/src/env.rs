//! Physical environment and transmitter models.
//!
//! Thermal background, channel transmissivity, the Gaussian pulse spectrum and
//! its discretization into frequency modes of width `2π/T_d`.

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 values. These are exact by definition of the SI except ħ,
/// which is derived from the exact h.
///
/// | symbol | value | unit |
/// |--------|-------|------|
/// | ħ | 1.054571817e-34 | J·s |
/// | k_B | 1.380649e-23 | J/K |
/// | c | 299792458 | m/s |
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub reduced_planck: f64,
    pub boltzmann: f64,
    pub light_speed: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    reduced_planck: 1.054_571_817e-34,
    boltzmann: 1.380_649e-23,
    light_speed: 299_792_458.0,
};

/// Speed of light in m/s.
pub const C: f64 = CODATA_2018.light_speed;

/// Converts an ordinary frequency in GHz to angular frequency in rad/s.
pub fn ghz_to_angular(freq_ghz: f64) -> f64 {
    2.0 * PI * freq_ghz * 1e9
}

/// Mean thermal photon number per mode at angular frequency `omega` and bath
/// temperature `temperature` (Bose-Einstein occupation).
pub fn planck_occupation(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 0.0;
    }
    let x = CODATA_2018.reduced_planck * omega / (CODATA_2018.boltzmann * temperature);
    1.0 / x.exp_m1()
}

/// Radar-equation parameters for a monostatic-style round trip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Antenna area A_R in m².
    pub antenna_area: f64,
    /// Target cross section σ in m².
    pub cross_section: f64,
    /// Target range L in m.
    pub range: f64,
    /// Carrier angular frequency ω₀ in rad/s.
    pub carrier_angular_freq: f64,
}

impl LinkBudget {
    /// Antenna gain G_T = A_R / λ².
    pub fn antenna_gain(&self) -> f64 {
        let wavelength = 2.0 * PI * C / self.carrier_angular_freq;
        self.antenna_area / (wavelength * wavelength)
    }

    /// Round-trip transmissivity κ = G_T/(4πL²) · σA_R/(4πL²).
    ///
    /// Fails when any input is non-positive or when κ ≥ 0.1, since every
    /// closed-form bound downstream assumes κ ≪ 1.
    pub fn kappa(&self) -> Result<f64> {
        for (key, v) in [
            ("antenna_area", self.antenna_area),
            ("cross_section", self.cross_section),
            ("range", self.range),
            ("carrier_angular_freq", self.carrier_angular_freq),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::param(key, "must be positive"));
            }
        }
        let sphere = 4.0 * PI * self.range * self.range;
        let kappa = self.antenna_gain() / sphere * self.cross_section * self.antenna_area / sphere;
        if kappa >= 0.1 {
            return Err(Error::param(
                "transmissivity",
                format!("link budget gives κ = {kappa:.4} ≥ 0.1; the κ ≪ 1 models do not apply"),
            ));
        }
        Ok(kappa)
    }
}

/// All physical parameters of a run, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadarScenario {
    /// ω₀, rad/s.
    pub carrier_angular_freq: f64,
    /// Δω, rad/s.
    pub bandwidth: f64,
    /// T_d, s.
    pub pulse_duration: f64,
    /// d, m.
    pub receiver_separation: f64,
    /// L, m.
    pub target_range: f64,
    /// φ, rad.
    pub target_angle: f64,
    /// φ_c, rad.
    pub compensation_angle: f64,
    /// ξ, rad.
    pub reflection_phase: f64,
    /// Δφ, rad.
    pub prior_width: f64,
    /// N_S, photons per mode.
    pub signal_brightness: f64,
    /// N_B, photons per mode.
    pub noise_occupation: f64,
    /// κ.
    pub transmissivity: f64,
}

impl RadarScenario {
    /// τ = 2L/c.
    pub fn time_of_flight(&self) -> f64 {
        2.0 * self.target_range / C
    }

    /// κ·cos(x − φ_c) for a target at angle `x`.
    pub fn kappa_eff(&self, x: f64) -> f64 {
        self.transmissivity * (x - self.compensation_angle).cos()
    }

    /// Copy with the target moved to angle `x` (compensation unchanged).
    pub fn at_angle(&self, x: f64) -> Self {
        RadarScenario {
            target_angle: x,
            ..*self
        }
    }

    /// Δω·T_d·κ·N_S/N_B.
    pub fn snr(&self) -> f64 {
        self.bandwidth * self.pulse_duration * self.transmissivity * self.signal_brightness
            / self.noise_occupation
    }

    pub fn snr_db(&self) -> f64 {
        10.0 * self.snr().log10()
    }

    /// Copy with N_S solved so that [`snr`](Self::snr) equals `target`.
    pub fn with_snr(&self, target: f64) -> Self {
        let per_photon = self.bandwidth * self.pulse_duration * self.transmissivity / self.noise_occupation;
        RadarScenario {
            signal_brightness: target / per_photon,
            ..*self
        }
    }

    /// δφ_ref² = Δφ²/12, the mean-square error of a uniform prior.
    pub fn reference_mse(&self) -> f64 {
        self.prior_width * self.prior_width / 12.0
    }

    /// Time-bandwidth product Δω·T_d/2π, roughly the number of modes within one Δω.
    pub fn time_bandwidth(&self) -> f64 {
        self.bandwidth * self.pulse_duration / (2.0 * PI)
    }

    /// Checks the hard invariants and logs warnings for soft ones.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("carrier_angular_freq", self.carrier_angular_freq),
            ("bandwidth", self.bandwidth),
            ("pulse_duration", self.pulse_duration),
            ("receiver_separation", self.receiver_separation),
            ("target_range", self.target_range),
            ("signal_brightness", self.signal_brightness),
            ("noise_occupation", self.noise_occupation),
        ];
        for (key, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::param(key, format!("{} must be positive", key.replace('_', " "))));
            }
        }
        if !(self.transmissivity > 0.0 && self.transmissivity < 1.0) {
            return Err(Error::param("transmissivity", "must lie in (0, 1)"));
        }
        if !(self.prior_width > 0.0 && self.prior_width < PI) {
            return Err(Error::param("prior_width", "must lie in (0, π)"));
        }
        if (self.target_angle - self.compensation_angle).abs() >= PI / 2.0 {
            return Err(Error::param(
                "compensation_angle",
                "|target_angle − compensation_angle| must be below π/2",
            ));
        }
        for (key, v) in [
            ("target_angle", self.target_angle),
            ("compensation_angle", self.compensation_angle),
            ("reflection_phase", self.reflection_phase),
        ] {
            if !v.is_finite() {
                return Err(Error::param(key, "must be finite"));
            }
        }
        if 2.0 * PI / self.pulse_duration >= self.bandwidth / 10.0 {
            warn!(
                "bin width 2π/T_d = {:.3e} rad/s is not ≪ bandwidth {:.3e} rad/s",
                2.0 * PI / self.pulse_duration,
                self.bandwidth
            );
        }
        if self.bandwidth >= self.carrier_angular_freq / 10.0 {
            warn!("bandwidth is not ≪ carrier frequency");
        }
        Ok(())
    }
}

/// Mean photon number S^(n)(Ω) = √(2π)·N_S·exp(−Ω²/2Δω²) of the mode at offset Ω.
pub fn per_mode_brightness(omega: f64, scenario: &RadarScenario) -> f64 {
    let u = omega / scenario.bandwidth;
    (2.0 * PI).sqrt() * scenario.signal_brightness * (-0.5 * u * u).exp()
}

/// Phase-sensitive correlation S^(p) = √(S(S+1)) of a two-mode squeezed vacuum.
pub fn phase_sensitive_brightness(brightness: f64) -> f64 {
    (brightness * (brightness + 1.0)).sqrt()
}

/// Amplitude spectrum S(Ω) = (Δω²/2π)^{−1/4}·exp(−Ω²/4Δω²) of the transmitted pulse.
pub fn classical_pulse_spectrum(omega: f64, scenario: &RadarScenario) -> f64 {
    let dw = scenario.bandwidth;
    (dw * dw / (2.0 * PI)).powf(-0.25) * (-omega * omega / (4.0 * dw * dw)).exp()
}

/// Default cap on the number of explicit frequency bins.
pub const DEFAULT_BIN_CAP: u64 = 1 << 20;

/// Default truncation of the spectrum at ±k_max·Δω.
pub const DEFAULT_K_MAX: f64 = 5.0;

/// Discretized frequency offsets Ω_j = j·2π/T_d within ±k_max·Δω.
///
/// Above the bin cap the offsets are not materialized and the grid is flagged
/// for continuous-limit accumulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub bin_width: f64,
    pub k_max: f64,
    pub mode_count: u64,
    pub continuous: bool,
    offsets: Vec<f64>,
}

impl SpectralGrid {
    /// Offsets of the explicit bins; empty in continuous-limit mode.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Half-width k_max·Δω of the covered band.
    pub fn half_span(&self, bandwidth: f64) -> f64 {
        self.k_max * bandwidth
    }
}

pub fn build_grid(pulse_duration: f64, bandwidth: f64, k_max: f64) -> Result<SpectralGrid> {
    build_grid_capped(pulse_duration, bandwidth, k_max, DEFAULT_BIN_CAP)
}

pub fn build_grid_capped(pulse_duration: f64, bandwidth: f64, k_max: f64, cap: u64) -> Result<SpectralGrid> {
    if !(pulse_duration > 0.0) {
        return Err(Error::param("pulse_duration", "must be positive"));
    }
    if !(bandwidth > 0.0) {
        return Err(Error::param("bandwidth", "must be positive"));
    }
    if !(k_max >= 3.0) {
        return Err(Error::param("k_max", "must be at least 3"));
    }
    let bin_width = 2.0 * PI / pulse_duration;
    // The tiny relative slack keeps exact multiples (k_max·Δω = j·δΩ) inside the band.
    let half = (k_max * bandwidth / bin_width * (1.0 + 1e-12)).floor();
    let mode_count = if half < 1e18 { 2 * half as u64 + 1 } else { u64::MAX };
    let continuous = mode_count > cap;
    let offsets = if continuous {
        Vec::new()
    } else {
        let h = half as i64;
        (-h..=h).map(|j| j as f64 * bin_width).collect()
    };
    Ok(SpectralGrid {
        bin_width,
        k_max,
        mode_count,
        continuous,
        offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bistatic_w_band() -> RadarScenario {
        RadarScenario {
            carrier_angular_freq: ghz_to_angular(100.0),
            bandwidth: ghz_to_angular(5.0),
            pulse_duration: 1e-3,
            receiver_separation: 8.0,
            target_range: 500.0,
            target_angle: 0.1,
            compensation_angle: 0.1,
            reflection_phase: 0.0,
            prior_width: PI / 100.0,
            signal_brightness: 1e-2,
            noise_occupation: 32.0,
            transmissivity: 1e-3,
        }
    }

    #[test]
    fn planck_at_w_band() {
        let nb = planck_occupation(ghz_to_angular(100.0), 150.0);
        assert!((nb - 30.75).abs() < 0.05, "{nb}");
        assert_eq!(planck_occupation(1e12, 0.0), 0.0);
    }

    #[test]
    fn planck_ln2_gives_one() {
        let omega = 1e12;
        let t = CODATA_2018.reduced_planck * omega / (CODATA_2018.boltzmann * 2f64.ln());
        assert!((planck_occupation(omega, t) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn planck_monotone_and_rayleigh_jeans() {
        let mut prev = f64::INFINITY;
        for k in 1..50 {
            let n = planck_occupation(ghz_to_angular(10.0 * k as f64), 150.0);
            assert!(n < prev);
            prev = n;
        }
        let mut prev = 0.0;
        for k in 1..50 {
            let n = planck_occupation(ghz_to_angular(100.0), 10.0 * k as f64);
            assert!(n > prev);
            prev = n;
        }
        let omega = ghz_to_angular(1.0);
        let t = 1e4;
        let x = CODATA_2018.reduced_planck * omega / (CODATA_2018.boltzmann * t);
        assert!(x < 1e-3);
        assert!((planck_occupation(omega, t) * x - 1.0).abs() < 1e-3);
    }

    #[test]
    fn link_budget_values() {
        let lb = LinkBudget {
            antenna_area: 20.0,
            cross_section: 0.1,
            range: 500.0,
            carrier_angular_freq: ghz_to_angular(100.0),
        };
        let k = lb.kappa().unwrap();
        // λ = c/f ≈ 3 mm, G_T ≈ 2.2e6; hand arithmetic gives 4.50e-7.
        assert!((k / 4.50e-7 - 1.0).abs() < 0.01, "{k}");
        let near = LinkBudget { range: 100.0, ..lb }.kappa().unwrap();
        assert!((near / k - 625.0).abs() < 1e-9);
        assert!((near - 2.81e-4).abs() < 0.01e-4);
        let tiny = LinkBudget { cross_section: 1e-300, ..lb }.kappa().unwrap();
        assert!(tiny < 1e-300);
        assert!(LinkBudget { range: 1.0, ..lb }.kappa().is_err());
    }

    #[test]
    fn link_budget_l4_scaling() {
        let base = LinkBudget {
            antenna_area: 20.0,
            cross_section: 0.1,
            range: 100.0,
            carrier_angular_freq: ghz_to_angular(100.0),
        };
        let c0 = base.kappa().unwrap() * 100f64.powi(4);
        for l in [150.0, 700.0, 3000.0, 12345.0] {
            let c = LinkBudget { range: l, ..base }.kappa().unwrap() * l.powi(4);
            assert!((c / c0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn brightness_shape() {
        let sc = bistatic_w_band();
        let peak = per_mode_brightness(0.0, &sc);
        assert!((peak - (2.0 * PI).sqrt() * sc.signal_brightness).abs() < 1e-15);
        let half = per_mode_brightness(sc.bandwidth * (2.0 * 2f64.ln()).sqrt(), &sc);
        assert!((half / peak - 0.5).abs() < 1e-12);
        assert!((phase_sensitive_brightness(3.0) - 12f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn spectrum_matches_brightness_shape() {
        let sc = bistatic_w_band();
        let ratio0 = classical_pulse_spectrum(0.0, &sc).powi(2) / per_mode_brightness(0.0, &sc);
        for k in 1..20 {
            let w = k as f64 * 0.37 * sc.bandwidth;
            let r = classical_pulse_spectrum(w, &sc).powi(2) / per_mode_brightness(w, &sc);
            assert!((r / ratio0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn snr_definition() {
        let sc = RadarScenario {
            bandwidth: 1.0,
            pulse_duration: 1.0,
            transmissivity: 0.5,
            signal_brightness: 2.0,
            noise_occupation: 1.0,
            ..bistatic_w_band()
        };
        assert!((sc.snr() - 1.0).abs() < 1e-15);
        assert!(sc.snr_db().abs() < 1e-12);
        let doubled = RadarScenario { signal_brightness: 4.0, ..sc };
        assert!((doubled.snr() - 2.0).abs() < 1e-15);
        let tuned = bistatic_w_band().with_snr(3.076);
        assert!((tuned.snr() - 3.076).abs() < 1e-12);
    }

    #[test]
    fn grid_counts() {
        let g = build_grid(1e-6, 2.0 * PI * 1e6, 4.0).unwrap();
        assert_eq!(g.mode_count, 9);
        assert!(!g.continuous);
        assert_eq!(g.offsets().len(), 9);
        assert!((g.bin_width - 2.0 * PI * 1e6).abs() < 1e-6);
        assert!(g.offsets().iter().sum::<f64>().abs() < 1e-6);
        let big = build_grid(0.1, ghz_to_angular(5.0), 5.0).unwrap();
        assert!(big.continuous);
        assert!(big.offsets().is_empty());
        assert!(build_grid(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn scenario_validation() {
        assert!(bistatic_w_band().validate().is_ok());
        let bad = RadarScenario { bandwidth: -1.0, ..bistatic_w_band() };
        let msg = bad.validate().unwrap_err().to_string();
        assert!(msg.contains("bandwidth must be positive"), "{msg}");
        assert!(RadarScenario { transmissivity: 1.0, ..bistatic_w_band() }.validate().is_err());
        assert!(RadarScenario { compensation_angle: 2.0, ..bistatic_w_band() }.validate().is_err());
    }
}

#[cfg(test)]
pub(crate) use tests::bistatic_w_band as test_scenario;
