//! Classical-over-quantum Ziv-Zakai ratio at the quantum SNR threshold.
//!
//! Pass `--numerical` to also run the frequency-resolved Chernoff bound at
//! the link-budget point as well (takes tens of seconds).

use qradar::bounds::{quantum_advantage, NumericalOptions, QcbMethod, SChoice, ZzbOptions};
use qradar::env::{ghz_to_angular, planck_occupation, LinkBudget, RadarScenario};

fn main() {
    let w0 = ghz_to_angular(100.0);
    let base = RadarScenario {
        carrier_angular_freq: w0,
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
    let opts = ZzbOptions::default();
    let a = quantum_advantage(&base, QcbMethod::Asymptotic, &opts).unwrap();
    println!(
        "d = 8 m: SNR_th = {:.2} dB, CZZB {:.3e}, QZZB {:.3e}, advantage {:.2} dB",
        10.0 * a.snr.log10(),
        a.classical.value,
        a.quantum.value,
        a.advantage_db
    );

    // Link-budget point: A_R = 20 m², σ = 0.1 m², 150 K background.
    let link = LinkBudget { antenna_area: 20.0, cross_section: 0.1, range: 500.0, carrier_angular_freq: w0 };
    let spot = RadarScenario {
        pulse_duration: 0.1,
        receiver_separation: 10.0,
        noise_occupation: planck_occupation(w0, 150.0),
        transmissivity: link.kappa().unwrap(),
        ..base
    };
    let a = quantum_advantage(&spot, QcbMethod::Asymptotic, &opts).unwrap();
    println!("L = 500 m, T_d = 0.1 s, asymptotic: {:.2} dB (N_S = {:.3e})", a.advantage_db, a.signal_brightness);
    if std::env::args().any(|a| a == "--numerical") {
        let n = NumericalOptions { s: SChoice::Fixed(0.5), ..NumericalOptions::default() };
        let a = quantum_advantage(&spot, QcbMethod::Numerical(n), &opts).unwrap();
        println!("L = 500 m, T_d = 0.1 s, frequency-resolved: {:.2} dB", a.advantage_db);
    }
}
