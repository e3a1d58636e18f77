//! Drives a subcommand from a JSON configuration, as the `qradar` binary
//! does, and writes the CSV and SVG next to the system temp dir.

use qradar::cli::{render_svg, run_subcommand, RunConfig, Subcommand};

fn main() {
    let cfg = RunConfig::parse(
        r#"{
            "scenario": { "receiver_separation_m": 8, "noise_occupation": 32, "transmissivity": 0.001 },
            "sweep": [{ "axis": "snr_db", "start": -5, "stop": 25, "points": 13 }],
            "compute": { "workers": 2 }
        }"#,
    )
    .unwrap();
    let out = run_subcommand(Subcommand::BoundsSweep, &cfg).unwrap();
    let dir = std::env::temp_dir();
    out.table.write(&dir.join("bounds-sweep.csv")).unwrap();
    std::fs::write(dir.join("bounds-sweep.svg"), render_svg(&out.table, &out.plot).unwrap()).unwrap();
    println!("{}", out.table.to_csv_string());
    println!("wrote {}", dir.join("bounds-sweep.{csv,svg}").display());

    // A bad key is reported by name.
    let err = RunConfig::parse(r#"{ "scenario": { "bandwidth_ghz": -1 } }"#).unwrap_err();
    println!("rejected: {err}");
}
