//! Ziv-Zakai and Cramér-Rao bounds across SNR, normalized by the prior MSE.

use qradar::bounds::{crb, dual_receiver_zzb, snr_threshold, Kind, QcbMethod, ZzbMode, ZzbOptions};
use qradar::env::{ghz_to_angular, RadarScenario};

fn main() {
    let sc = RadarScenario {
        carrier_angular_freq: ghz_to_angular(100.0),
        bandwidth: ghz_to_angular(5.0),
        pulse_duration: 1e-3,
        receiver_separation: 8.0,
        target_range: 500.0,
        target_angle: 0.1,
        compensation_angle: 0.1,
        reflection_phase: 0.0,
        prior_width: std::f64::consts::PI / 100.0,
        signal_brightness: 0.01,
        noise_occupation: 32.0,
        transmissivity: 1e-3,
    };
    let reference = sc.reference_mse();
    let th = snr_threshold(&sc).unwrap();
    println!("threshold {:.2} dB", th.snr_db);
    println!("{:>7} {:>10} {:>10} {:>10} {:>10}", "SNR dB", "CCRB", "QCRB", "CZZB", "QZZB");
    let opts = ZzbOptions::default();
    for db in (-10..=30).step_by(5) {
        let s = sc.with_snr(10f64.powf(db as f64 / 10.0));
        let z = |kind| {
            dual_receiver_zzb(&s, kind, QcbMethod::Asymptotic, ZzbMode::Full, &opts).unwrap().value / reference
        };
        println!(
            "{db:>7} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}",
            crb(&s, Kind::Classical) / reference,
            crb(&s, Kind::Quantum) / reference,
            z(Kind::Classical),
            z(Kind::Quantum)
        );
    }
}
