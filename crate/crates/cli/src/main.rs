use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use evidence::{CombinationMode, Model};

mod commands;
mod render;

use commands::{CliError, Format, Query};
use render::NumberFormat;

/// Weights of evidence, posteriors and posterior bounds for finite
/// hypothesis spaces described by a JSON model file.
#[derive(Parser)]
#[command(name = "evidence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight of evidence for each observation, or for one observation sequence.
    Weights(QueryArgs),
    /// Posterior after an observation or sequence, with bounds for generalized models.
    Posterior {
        #[command(flatten)]
        query: QueryArgs,
        /// Prior as `h=p/q,...`; defaults to the model's prior.
        #[arg(long)]
        prior: Option<String>,
    },
    /// Report whether the mappings are uncorrelated and print the refinement
    /// or a witness.
    Analyze {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct QueryArgs {
    /// Model file (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated observation sequence; omit to tabulate every observation.
    #[arg(long)]
    obs: Option<String>,
    /// How several mappings combine over a sequence: fixed or per-observation.
    #[arg(long)]
    mode: Option<CombinationMode>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print numbers as decimals with this many digits instead of exact fractions.
    #[arg(long)]
    decimal: Option<usize>,
}

impl QueryArgs {
    fn into_query(self) -> Result<Query, CliError> {
        Ok(Query {
            model: Model::load(&self.model)?,
            obs: self.obs,
            mode: self.mode,
            format: self.format,
            numbers: NumberFormat { decimal: self.decimal },
        })
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Weights(args) => commands::weights(&args.into_query()?),
        Command::Posterior { query, prior } => commands::posterior(&query.into_query()?, prior.as_deref()),
        Command::Analyze { model, format } => commands::analyze(&Model::load(&model)?, format),
    }
}

fn clap_exit_code(e: &clap::Error) -> u8 {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(clap_exit_code(&e));
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
