use log::debug;

use super::qcb::{check_asymptotic_regime, qcb_asymptotic, DualReceiver, FrequencyResolvedQcb, NumericalOptions};
use super::threshold::snr_threshold;
use super::zzb::{zzb, ZzbMode, ZzbOptions, ZzbResult};
use super::crb::upsilon;
use super::Kind;
use crate::env::RadarScenario;
use crate::error::Result;

/// How the error probability inside the Ziv-Zakai integral is bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QcbMethod {
    /// Long-pulse closed form.
    Asymptotic,
    /// Frequency-resolved Gaussian Chernoff bound.
    Numerical(NumericalOptions),
}

/// QCB-substituted Ziv-Zakai bound of the bistatic radar, prior centred on
/// the scenario's target angle.
pub fn dual_receiver_zzb(
    scenario: &RadarScenario,
    kind: Kind,
    method: QcbMethod,
    mode: ZzbMode,
    opts: &ZzbOptions,
) -> Result<ZzbResult> {
    let phi = scenario.target_angle;
    let width = scenario.prior_width;
    // Quantum Pr falls from ½ over ζ ~ 1/√(SNR·Υ).
    let knee = 1.0 / (scenario.snr() * upsilon(scenario)).sqrt();
    let opts = &match opts.finest_scale {
        Some(_) => *opts,
        None => opts.with_scale(knee / 8.0),
    };
    match method {
        QcbMethod::Asymptotic => zzb(
            |x, z| Ok(qcb_asymptotic(x, z, scenario, kind).bound),
            phi,
            width,
            mode,
            opts,
        ),
        QcbMethod::Numerical(n) => {
            let qcb = FrequencyResolvedQcb::new(DualReceiver { scenario, kind }, scenario, n)?;
            // The inner x-integral runs at a tenth of rel_tol and cannot get
            // below the noise in P.
            let floor = 10.0 * qcb.log_precision();
            let opts = if opts.rel_tol < floor {
                debug!("ZZB tolerance raised from {:.1e} to {floor:.1e}", opts.rel_tol);
                ZzbOptions { rel_tol: floor, ..*opts }
            } else {
                *opts
            };
            zzb(|x, z| Ok(qcb.log_bound(x, z)?.exp()), phi, width, mode, &opts)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advantage {
    /// Linear SNR the comparison was made at.
    pub snr: f64,
    /// N_S giving that SNR.
    pub signal_brightness: f64,
    pub classical: ZzbResult,
    pub quantum: ZzbResult,
    /// 10·log₁₀(CZZB/QZZB).
    pub advantage_db: f64,
}

/// Classical-over-quantum ZZB ratio with N_S tuned so that SNR = `snr`.
pub fn advantage_at_snr(
    scenario: &RadarScenario,
    snr: f64,
    method: QcbMethod,
    mode: ZzbMode,
    opts: &ZzbOptions,
) -> Result<Advantage> {
    let tuned = scenario.with_snr(snr);
    if method == QcbMethod::Asymptotic {
        check_asymptotic_regime(&tuned);
    }
    let classical = dual_receiver_zzb(&tuned, Kind::Classical, method, mode, opts)?;
    let quantum = dual_receiver_zzb(&tuned, Kind::Quantum, method, mode, opts)?;
    let advantage_db = 10.0 * (classical.value / quantum.value).log10();
    debug!(
        "advantage {advantage_db:.3} dB at SNR {snr:.4} (N_S = {:.4e}, {} + {} Pr evaluations)",
        tuned.signal_brightness, classical.evaluations, quantum.evaluations
    );
    Ok(Advantage {
        snr,
        signal_brightness: tuned.signal_brightness,
        classical,
        quantum,
        advantage_db,
    })
}

/// Quantum advantage at the quantum SNR threshold, both bounds from the
/// full prior integral.
pub fn quantum_advantage(scenario: &RadarScenario, method: QcbMethod, opts: &ZzbOptions) -> Result<Advantage> {
    let th = snr_threshold(scenario)?;
    advantage_at_snr(scenario, th.snr, method, ZzbMode::Full, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::test_scenario;

    #[test]
    fn high_snr_limit_is_four() {
        // CZZB → 2·CCRB = 4·QCRB ← QZZB.
        let sc = test_scenario();
        let a = advantage_at_snr(&sc, 1e5, QcbMethod::Asymptotic, ZzbMode::SmallPrior, &ZzbOptions::default())
            .unwrap();
        assert!((a.advantage_db - 10.0 * 4f64.log10()).abs() < 0.1, "{}", a.advantage_db);
    }

    #[test]
    fn bounded_by_reference() {
        let sc = test_scenario();
        for snr in [0.01, 1.0, 10.0] {
            let a = advantage_at_snr(&sc, snr, QcbMethod::Asymptotic, ZzbMode::SmallPrior, &ZzbOptions::default())
                .unwrap();
            assert!(a.quantum.value <= sc.reference_mse() * (1.0 + 1e-4));
            assert!(a.classical.value <= sc.reference_mse() * (1.0 + 1e-4));
            assert!(a.advantage_db > 0.0);
        }
    }
}
