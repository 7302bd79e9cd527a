use std::fs::File;
use std::io::{BufWriter, ErrorKind, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlcz_core::analysis::FigureId;

use crate::commands::{cmd_curve, cmd_figure, cmd_fit, cmd_mc, cmd_table1};
use crate::config::{load_config, Format, RunConfig};
use crate::error::{CliError, Result};
use crate::output::write_table;
use crate::runner::with_threads;

/// Decoherence and entanglement-lifetime calculator for DLCZ-type
/// single-excitation memory links.
#[derive(Debug, Parser)]
#[command(name = "dlcz", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form retrieval, cross-correlation, visibility and concurrence over the sweep.
    Curve,
    /// Monte-Carlo estimates next to the closed form over the sweep.
    Mc,
    /// Fit a model to the data file named in the config's `fit` section.
    Fit,
    /// Entanglement storage lifetime and link efficiency per field-noise width.
    Table1,
    /// Model curves behind one figure.
    Figure {
        /// One of 4, 5, 6, 7, 8, S1.
        #[arg(long = "figure-id")]
        figure_id: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON config file; built-in defaults when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Monte-Carlo seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte-Carlo trials per phase bin and sweep point.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Number of interferometer phase bins.
    #[arg(long = "theta-points", global = true)]
    pub theta_points: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<FormatArg>,
    /// Worker threads for Monte-Carlo runs; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl CommonArgs {
    /// Config file (or defaults) with command-line overrides applied and validated.
    pub fn resolve_config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.mc.seed = seed;
        }
        if let Some(trials) = self.trials {
            cfg.mc.trials = trials;
        }
        if let Some(n) = self.theta_points {
            cfg.mc.theta_points = n;
        }
        if let Some(path) = &self.output {
            cfg.output.path = Some(path.clone());
        }
        if let Some(format) = self.format {
            cfg.output.format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        if self.threads == Some(0) {
            return Err(CliError::config("threads", "must be at least 1"));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = cli.common.resolve_config()?;
    let table = match &cli.command {
        Command::Curve => cmd_curve(&cfg)?,
        Command::Mc => with_threads(cli.common.threads, || cmd_mc(&cfg))?,
        Command::Fit => cmd_fit(&cfg)?,
        Command::Table1 => cmd_table1(&cfg)?,
        Command::Figure { figure_id } => {
            let id: FigureId = figure_id.parse().map_err(|_| {
                CliError::Usage(format!("unknown figure id `{figure_id}`; valid ids are 4, 5, 6, 7, 8, S1"))
            })?;
            cmd_figure(&cfg, id)?
        }
    };
    match &cfg.output.path {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut out = BufWriter::new(file);
            write_table(&table, cfg.output.format, &mut out)?;
            out.flush().map_err(|e| CliError::io(path, e))
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            match write_table(&table, cfg.output.format, &mut out) {
                // a closed pipe (e.g. `| head`) is not a failure
                Err(CliError::Output(e)) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}
