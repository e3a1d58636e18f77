//! Fisher information, Cramér-Rao bounds and the SNR threshold of the
//! quantum Ziv-Zakai bound.

use qradar::bounds::{crb, qfi_total, snr_threshold, upsilon, zzb_asymptotes, Kind};
use qradar::env::{ghz_to_angular, RadarScenario, DEFAULT_K_MAX};

fn main() {
    let sc = RadarScenario {
        carrier_angular_freq: ghz_to_angular(100.0),
        bandwidth: ghz_to_angular(5.0),
        pulse_duration: 1e-3,
        receiver_separation: 10.0,
        target_range: 500.0,
        target_angle: 0.1,
        compensation_angle: 0.1,
        reflection_phase: 0.0,
        prior_width: std::f64::consts::PI / 100.0,
        signal_brightness: 0.01,
        noise_occupation: 32.0,
        transmissivity: 1e-3,
    };
    println!("SNR = {:.3} ({:.2} dB), Υ = {:.4e}", sc.snr(), sc.snr_db(), upsilon(&sc));
    for kind in [Kind::Classical, Kind::Quantum] {
        let q = qfi_total(&sc, kind, DEFAULT_K_MAX).unwrap();
        println!(
            "{:>9}: QFI {:.6e} (quadrature {:.6e}, rel. diff {:.1e}), CRB {:.4e} rad²",
            kind.label(),
            q.qfi,
            q.integrated,
            q.discrepancy,
            crb(&sc, kind)
        );
    }

    let th = snr_threshold(&sc).unwrap();
    println!("threshold SNR {:.4} = {:.3} dB", th.snr, th.snr_db);
    let at = zzb_asymptotes(&sc.with_snr(th.snr));
    println!("at threshold: high-SNR branch {:.3e}, low-SNR floor {:.3e}, δφ_ref² {:.3e}", at.high_snr, at.low_snr_floor, th.reference_mse);

    for d in [4.0, 8.0, 10.0, 20.0] {
        let s = RadarScenario { receiver_separation: d, ..sc };
        println!("d = {d:>4} m: threshold {:.3} dB", snr_threshold(&s).unwrap().snr_db);
    }
}
