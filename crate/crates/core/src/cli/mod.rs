//! Command-line plumbing: configuration, subcommands, CSV and SVG output.

pub mod config;
pub mod csv;
pub mod run;
pub mod svg;

pub use config::{load_config, RunConfig};
pub use csv::{Cell, CsvTable};
pub use run::{run_subcommand, RunOutput, Subcommand};
pub use svg::{render_svg, PlotKind};
