use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qrac_core::photonic::Protocol;

use crate::commands::{self, Target};
use crate::config::{Format, RunConfig};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(
    name = "qrac",
    version,
    about = "Quantum random access codes: exact bounds and link simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical and quantum success bounds for alphabet size d.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=16))]
        d: u64,
    },
    /// Regenerate a table or figure data set.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Simulate the configured link at each carrier power.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
    },
}

/// Flags shared by the simulating commands; they override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Key-value or JSON config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub protocol: Option<Protocol>,
    #[arg(long)]
    pub rounds: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Independent RNG streams; results depend on this number.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Carrier power in dBm; repeat for several points.
    #[arg(long = "power", allow_negative_numbers = true)]
    pub powers: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut rc = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(p) = self.protocol {
            rc.protocol = p;
        }
        if let Some(n) = self.rounds {
            rc.rounds = n;
        }
        if let Some(s) = self.seed {
            rc.seed = s;
        }
        if let Some(w) = self.workers {
            rc.workers = w;
        }
        if !self.powers.is_empty() {
            rc.sweep = self.powers.clone();
        }
        if let Some(out) = &self.out {
            rc.output = Some(out.clone());
        }
        if let Some(f) = self.format {
            rc.format = f;
        }
        rc.validate()?;
        Ok(rc)
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Bounds { d } => {
            print!("{}", commands::bounds(*d as usize)?);
            Ok(())
        }
        Command::Reproduce { target, run } => {
            let rc = run.resolve()?;
            commands::reproduce(*target, &rc)?.emit(rc.output.as_deref(), rc.format)
        }
        Command::Sweep { run } => {
            let rc = run.resolve()?;
            commands::sweep(&rc)?.emit(rc.output.as_deref(), rc.format)
        }
    }
}
