//! Thermal photon occupation and radar link budget at W band.

use qradar::env::{ghz_to_angular, planck_occupation, LinkBudget, CODATA_2018};

fn main() {
    let w0 = ghz_to_angular(100.0);
    println!("constants: ħ = {:e}, k_B = {:e}, c = {}", CODATA_2018.reduced_planck, CODATA_2018.boltzmann, CODATA_2018.light_speed);
    println!("{:>8} {:>12}", "T [K]", "N_B");
    for t in [4.0, 50.0, 150.0, 300.0] {
        println!("{t:>8} {:>12.4}", planck_occupation(w0, t));
    }

    for range in [100.0, 500.0, 2000.0] {
        let link = LinkBudget { antenna_area: 20.0, cross_section: 0.1, range, carrier_angular_freq: w0 };
        println!("L = {range:>6} m: gain {:.3e}, kappa {:.3e}", link.antenna_gain(), link.kappa().unwrap());
    }
}
