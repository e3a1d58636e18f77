//! Hermite-Gaussian occupancies of the received beam and the beamsplitter
//! cascade that sorts them.

use qradar::env::ghz_to_angular;
use qradar::sorter::{
    aperture_geometry, beamsplitter_cascade, hg_occupation, occupancy_derivative, occupancy_sequence,
    truncated_occupancy_sum,
};

fn main() {
    let ap = aperture_geometry(2e-3, 1e-3, 10_000.0, ghz_to_angular(100.0)).unwrap();
    println!("δ = 2 mm, r = 1 mm, L = 10 km: χ = {:.6}, D_f = {:.3e}", ap.chi, ap.fresnel_number);

    println!("{:>5} {:>9} {:>9} {:>9} {:>11}", "φ", "p00", "p10", "p01", "dp00/dφ");
    for phi in [0.0, 0.5, 1.0, 1.4] {
        println!(
            "{phi:>5} {:>9.6} {:>9.6} {:>9.6} {:>11.3e}",
            hg_occupation(0, 0, phi, ap.chi),
            hg_occupation(1, 0, phi, ap.chi),
            hg_occupation(0, 1, phi, ap.chi),
            occupancy_derivative(phi, ap.chi)
        );
    }
    for chi in [0.3, 1.0, 3.0] {
        println!("χ = {chi}: Σ p (n, m ≤ 200) at φ = 1 is {:.9}", truncated_occupancy_sum(1.0, chi, 200));
    }

    let table = occupancy_sequence(0.8, 0.5, 6);
    let cascade = beamsplitter_cascade(&table.probabilities()).unwrap();
    for ((n, m, p), eta) in table.entries.iter().zip(&cascade.etas) {
        println!("mode ({n},{m}): p = {p:.5}, stage transmissivity {eta:.5}");
    }
    println!("left in higher modes: {:.5}", table.residual);
}
