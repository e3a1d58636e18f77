use std::f64::consts::E;

use super::crb::upsilon;
use crate::env::RadarScenario;
use crate::error::{Error, Result};
use crate::optimize::bisect;

/// Inverse of y·e^{−y} on the branch y ≥ 1, for arguments in (0, 1/e].
///
/// Bisection on ln y − y = ln a over [1, 700].
pub fn inverse_y_exp(a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0 / E) {
        return Err(Error::ThresholdUndefined { argument: a });
    }
    let target = a.ln();
    if -1.0 - target <= 0.0 {
        return Ok(1.0);
    }
    Ok(bisect(|y| y.ln() - y - target, 1.0, 700.0, 1e-10))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    /// Linear SNR at which the high- and low-SNR envelopes meet.
    pub snr: f64,
    pub snr_db: f64,
    pub upsilon: f64,
    pub reference_mse: f64,
}

/// SNR_th = g[1/(Υ δφ_ref²)]/4 for the quantum Ziv-Zakai bound.
pub fn snr_threshold(scenario: &RadarScenario) -> Result<ThresholdResult> {
    let ups = upsilon(scenario);
    let reference = scenario.reference_mse();
    let argument = 1.0 / (ups * reference);
    if !(argument < 1.0 / E) {
        return Err(Error::ThresholdUndefined { argument });
    }
    let snr = inverse_y_exp(argument)? / 4.0;
    Ok(ThresholdResult {
        snr,
        snr_db: 10.0 * snr.log10(),
        upsilon: ups,
        reference_mse: reference,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZzbAsymptotes {
    /// 1/(4Υ·SNR), the high-SNR quantum bound.
    pub high_snr: f64,
    /// δφ_ref²·e^{−4·SNR}, the low-SNR lower envelope.
    pub low_snr_floor: f64,
}

/// Both quantum ZZB envelopes at the scenario's SNR.
pub fn zzb_asymptotes(scenario: &RadarScenario) -> ZzbAsymptotes {
    let snr = scenario.snr();
    ZzbAsymptotes {
        high_snr: 1.0 / (4.0 * upsilon(scenario) * snr),
        low_snr_floor: scenario.reference_mse() * (-4.0 * snr).exp(),
    }
}
