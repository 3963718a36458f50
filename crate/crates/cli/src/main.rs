//! `pishell`: build, verify and count on vector partition posets.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partition_shelling::Budget;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "pishell",
    version,
    about = "Vector partition posets: EL-labeling, shelling and sphere counts"
)]
struct Cli {
    /// Largest poset that may be built.
    #[arg(long, global = true, env = "PISHELL_MAX_ELEMENTS", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_elements: u64,
    /// Most maximal chains that may be enumerated.
    #[arg(long, global = true, env = "PISHELL_MAX_CHAINS", default_value_t = 10_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_chains: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Dims {
    /// Size of the ground set.
    #[arg(long)]
    n: usize,
    /// Number of labelings.
    #[arg(long)]
    s: usize,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Recursion,
    Mobius,
    Homology,
    Euler,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the poset and write it with optional cover labels.
    Build {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Attach the triple label to every cover.
        #[arg(long)]
        labels: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check the EL property of the cover labeling on every interval.
    VerifyEl {
        #[command(flatten)]
        dims: Dims,
        /// Corrupt the labeling first, to check that the verifier notices.
        #[arg(long)]
        sabotage: Option<partition_shelling::Sabotage>,
        /// Also verify the lexicographic shelling of the order complex.
        #[arg(long)]
        shelling: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Count the spheres in the order complex and cross-check methods.
    Count {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Sphere counts for n = 1..=max-n from the recursion, as CSV.
    Sequence {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Hasse diagram in DOT with cover labels.
    ExportDot {
        #[command(flatten)]
        dims: Dims,
        /// Leave the edges unlabeled.
        #[arg(long)]
        no_labels: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = Budget {
        max_elements: cli.max_elements,
        max_chains: cli.max_chains,
    };
    match cli.command {
        Command::Build {
            dims,
            format,
            labels,
            out,
        } => commands::build(
            dims.n,
            dims.s,
            budget,
            format,
            labels,
            out.output.as_deref(),
        ),
        Command::VerifyEl {
            dims,
            sabotage,
            shelling,
            format,
            out,
        } => commands::verify_el(
            dims.n,
            dims.s,
            budget,
            sabotage,
            shelling,
            format,
            out.output.as_deref(),
        ),
        Command::Count {
            dims,
            method,
            format,
            out,
        } => commands::count(
            dims.n,
            dims.s,
            budget,
            method,
            format,
            out.output.as_deref(),
        ),
        Command::Sequence { s, max_n, out } => commands::sequence(s, max_n, out.output.as_deref()),
        Command::ExportDot {
            dims,
            no_labels,
            out,
        } => commands::build(
            dims.n,
            dims.s,
            budget,
            Format::Dot,
            !no_labels,
            out.output.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pishell: {e}");
            e.exit_code()
        }
    }
}
