//! Per-bin Chernoff quantity versus s, and the asymptotic vs
//! frequency-resolved bound on a pair of bearing hypotheses.

use std::f64::consts::PI;

use qradar::bounds::{qcb_asymptotic, qcb_numerical, Kind, NumericalOptions};
use qradar::env::{ghz_to_angular, RadarScenario};
use qradar::gaussian::{ChernoffPair, SSearch};
use qradar::states::dual_quantum_state;

fn main() {
    // Narrow-band bin: 1 MHz bandwidth, d = 20 m, hypotheses 0 and π/3.
    let bin = RadarScenario {
        carrier_angular_freq: ghz_to_angular(100.0),
        bandwidth: 2.0 * PI * 1e6,
        pulse_duration: 8.0,
        receiver_separation: 20.0,
        target_range: 500.0,
        target_angle: 0.0,
        compensation_angle: 0.0,
        reflection_phase: 0.0,
        prior_width: PI / 100.0,
        signal_brightness: 0.1,
        noise_occupation: 32.0,
        transmissivity: 0.5,
    };
    let a = dual_quantum_state(&bin, 0.0);
    let b = dual_quantum_state(&bin.at_angle(PI / 3.0), 0.0);
    let pair = ChernoffPair::new(&a, &b).unwrap();
    for s in [0.1, 0.25, 0.5, 0.75, 0.9] {
        println!("s = {s:.2}: ½Tr ρ₁^s ρ₂^(1−s) = {:.8}", pair.term(s).unwrap());
    }
    let best = pair.minimize(&SSearch::default()).unwrap();
    println!("minimum {:.8} at s = {:.4}", best.bound_value, best.optimal_s);

    // Short pulse so the explicit frequency sum stays small.
    let sc = RadarScenario {
        carrier_angular_freq: ghz_to_angular(100.0),
        bandwidth: ghz_to_angular(5.0),
        pulse_duration: 1e-7,
        receiver_separation: 8.0,
        target_angle: 0.1,
        compensation_angle: 0.1,
        signal_brightness: 1e-3,
        noise_occupation: 32.0,
        transmissivity: 1e-3,
        ..bin
    };
    for zeta in [1e-4, 1e-3, 1e-2] {
        for kind in [Kind::Classical, Kind::Quantum] {
            let asy = qcb_asymptotic(0.1, zeta, &sc, kind);
            let num = qcb_numerical(0.1, zeta, &sc, kind, NumericalOptions::default()).unwrap();
            println!(
                "ζ = {zeta:.0e} {:>9}: ln P asymptotic {:.6}, frequency-resolved {:.6} ({} bins)",
                kind.label(),
                asy.log_bound,
                num.log_bound,
                num.samples.len()
            );
        }
    }
}
