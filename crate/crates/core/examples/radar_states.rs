//! Covariance matrices received by the two-receiver radar, classical and
//! entangled, at a few frequency offsets.

use qradar::env::{ghz_to_angular, RadarScenario};
use qradar::gaussian::validate_state;
use qradar::states::{dual_classical_state, dual_quantum_state};

fn sci<'a>(v: impl Iterator<Item = &'a f64>) -> String {
    v.map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ")
}

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
    sc.validate().unwrap();

    for omega in [0.0, sc.bandwidth, 3.0 * sc.bandwidth] {
        let c = dual_classical_state(&sc, omega);
        let q = dual_quantum_state(&sc, omega);
        let dq = validate_state(&q);
        println!("Ω = {:.2e} rad/s", omega);
        println!("  classical mean [{}]", sci(c.mean.iter()));
        println!("  classical diag {:.4?}", c.cov.diagonal().as_slice());
        println!("  quantum {}x{} CM, min symplectic eigenvalue {:.6}", q.cov.nrows(), q.cov.ncols(), dq.min_symplectic_eigenvalue);
        println!("  quantum CM first row [{}]", sci(q.cov.row(0).iter()));
    }
}
