use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use log::{error, info};
use qradar::cli::{load_config, render_svg, run_subcommand, Subcommand};
use qradar::Error;

/// Angle-estimation bounds for dual-receiver microwave radar.
#[derive(Debug, Parser)]
#[command(name = "qradar", version, about)]
struct Args {
    /// One of: planck, bounds-sweep, advantage-map, chernoff-s, occupancy, single-receiver.
    subcommand: Subcommand,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot destination.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads (default: the config value, else all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn run(args: Args) -> Result<(), Error> {
    let mut config = load_config(&args.config)?;
    if let Some(n) = args.workers {
        if n == 0 {
            return Err(Error::config("--workers", "must be at least 1"));
        }
        config.compute.workers = Some(n);
    }
    let out_path = args.out.or_else(|| config.output.csv.as_ref().map(PathBuf::from));
    let svg_path = args.svg.or_else(|| config.output.svg.as_ref().map(PathBuf::from));

    let result = run_subcommand(args.subcommand, &config)?;
    match &out_path {
        Some(p) => {
            result.table.write(p)?;
            info!("wrote {}", p.display());
        }
        None => print!("{}", result.table.to_csv_string()),
    }
    if let Some(p) = &svg_path {
        let svg = render_svg(&result.table, &result.plot)?;
        std::fs::write(p, svg).map_err(|source| Error::Io { path: p.display().to_string(), source })?;
        info!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e}");
            eprintln!("qradar: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 3 })
        }
    }
}
