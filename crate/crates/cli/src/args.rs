use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dengue_core::io::DataFormat;
use dengue_core::scenario::SweepAxis;

#[derive(Debug, Parser)]
#[command(name = "dengue", version, about = "Dengue host-vector model: simulation, threshold analysis and control sweeps")]
pub struct Cli {
    /// More detail on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one scenario and write its time series and summary.
    Simulate(RunArgs),
    /// Print thresholds, both R0 computations and the equilibria.
    Analyze {
        #[command(flatten)]
        run: RunArgs,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Vary one control or vaccine parameter over a grid of levels.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_parser = parse_axis)]
        axis: SweepAxis,
        /// Comma-separated levels.
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 0.75, 1.0])]
        values: Vec<f64>,
    },
    /// Regenerate every figure data set and its manifest.
    Figures {
        #[arg(long, env = "DENGUE_OUT_DIR", default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: DataFormat,
    },
    /// Check a configuration (after overrides) without running it.
    Validate(ConfigArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// TOML scenario file, or `baseline` for the built-in defaults.
    #[arg(long, default_value = "baseline")]
    pub config: String,

    /// Override a config key, e.g. `--set c_m=0.25` or `--set parameters.phi=0`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub config: ConfigArgs,

    #[arg(long, env = "DENGUE_OUT_DIR", default_value = "out")]
    pub out: PathBuf,

    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: DataFormat,
}

fn parse_format(s: &str) -> Result<DataFormat, String> {
    s.parse()
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    SweepAxis::from_name(s).ok_or_else(|| {
        let names: Vec<_> = SweepAxis::ALL.iter().map(|a| a.name()).collect();
        format!("unknown axis '{s}', expected one of {}", names.join(", "))
    })
}
