//! One receiver with a mode sorter: bearing information from the cos φ
//! projection and the fundamental-mode occupancy.

use std::f64::consts::PI;

use qradar::bounds::{crb_bracket, single_receiver_bounds, Kind, ZzbMode, ZzbOptions};
use qradar::env::{ghz_to_angular, RadarScenario};
use qradar::sorter::aperture_geometry;

fn main() {
    let dphi = PI / 100.0;
    let phi = PI / 2.0 - dphi / 2.0;
    let sc = RadarScenario {
        carrier_angular_freq: ghz_to_angular(100.0),
        bandwidth: ghz_to_angular(5.0),
        pulse_duration: 1e-3,
        receiver_separation: 8.0,
        target_range: 500.0,
        target_angle: phi,
        compensation_angle: 0.0,
        reflection_phase: 0.0,
        prior_width: dphi,
        signal_brightness: 0.01,
        noise_occupation: 32.0,
        transmissivity: 1e-3,
    };
    let ap = aperture_geometry(2e-3, 1e-3, sc.target_range, sc.carrier_angular_freq).unwrap();
    println!("χ = {:.4}, Fisher bracket at φ = {phi:.4}: {:.5}", ap.chi, crb_bracket(phi, ap.chi).unwrap());

    let reference = sc.reference_mse();
    for db in [0.0, 10.0, 20.0, 30.0, 40.0] {
        let s = sc.with_snr(10f64.powf(db / 10.0));
        let row: Vec<_> = [Kind::Classical, Kind::Quantum]
            .into_iter()
            .map(|k| single_receiver_bounds(&s, &ap, k, ZzbMode::SmallPrior, &ZzbOptions::default()).unwrap())
            .collect();
        println!(
            "{db:>4} dB: CCRB {:.3e} QCRB {:.3e} CZZB {:.3e} QZZB {:.3e} (÷ δφ_ref²)",
            row[0].crb / reference,
            row[1].crb / reference,
            row[0].zzb.value / reference,
            row[1].zzb.value / reference
        );
    }
}
