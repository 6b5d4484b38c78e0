//! `awa2uba`: translate alternating weak automata into unambiguous Büchi
//! automata and check the results.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uba_core::constructions::Algorithm;
use uba_core::set::MAX_STATES;

#[derive(Parser)]
#[command(name = "awa2uba", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an NBA from an AWA file and write it as HOA.
    Build {
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algorithm,
        /// Input `.awa` file, `-` for stdin.
        #[arg(short, long)]
        input: PathBuf,
        /// Output HOA file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print size statistics as JSON (to stderr when the HOA goes to stdout).
        #[arg(long)]
        stats: bool,
        /// Emit macrostate descriptions as HOA state names.
        #[arg(long)]
        names: bool,
        #[arg(long, default_value_t = 1_000_000)]
        state_limit: usize,
    },
    /// Decide whether a state accepts a lasso word `u;v`.
    Eval {
        #[arg(short, long)]
        input: PathBuf,
        /// Defaults to the initial state.
        #[arg(long)]
        state: Option<usize>,
        /// Letters separated by spaces, e.g. `"a;b a"`.
        #[arg(long)]
        lasso: String,
    },
    /// Show the accepting-suffix sets, distances, preorders and the unique
    /// run of the U construction on a lasso.
    Trace {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        lasso: String,
        #[arg(long, default_value_t = 1_000_000)]
        state_limit: usize,
    },
    /// Check that an automaton is unambiguous. HOA inputs (`.hoa`) are
    /// checked directly, AWA inputs are built first.
    CheckUnambiguous {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long, default_value_t = 1_000_000)]
        state_limit: usize,
        #[arg(long, default_value_t = 50_000_000)]
        product_limit: usize,
    },
    /// Compare an AWA with one of its constructions on all short lassos.
    Diff {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long, default_value_t = 3)]
        max_prefix: usize,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
        #[arg(long, default_value_t = 1_000_000)]
        state_limit: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded differential campaign over random weak AWAs.
    Campaign {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Maximum number of states per automaton.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=MAX_STATES as u64))]
        states: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=26))]
        alphabet: u64,
        /// Constructions to check, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "mh,brv,bu,u", value_parser = parse_algo)]
        algos: Vec<Algorithm>,
        /// Accepted lassos sampled per automaton for run-level checks.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_prefix: usize,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
        #[arg(long, default_value_t = 200_000)]
        state_limit: usize,
        /// Write the full report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one replayable directory per failing record.
        #[arg(long)]
        artifacts: Option<PathBuf>,
        /// Fail unless at least one BRV result is ambiguous.
        #[arg(long)]
        expect_brv_ambiguity: bool,
    },
    /// Re-run the checks stored in a failure artifact.
    Replay {
        #[arg(long)]
        artifact: PathBuf,
    },
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

/// Exit status classes.
#[derive(Debug)]
pub enum CliError {
    /// A check ran and found a problem (exit 1).
    Check(String),
    /// Bad arguments or unreadable input (exit 2).
    Usage(String),
    /// A state or product limit was hit (exit 3).
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Check(m) | CliError::Usage(m) | CliError::Resource(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            algo,
            input,
            output,
            stats,
            names,
            state_limit,
        } => commands::build(algo, &input, output.as_deref(), stats, names, state_limit),
        Command::Eval {
            input,
            state,
            lasso,
        } => commands::eval(&input, state, &lasso),
        Command::Trace {
            input,
            lasso,
            state_limit,
        } => commands::trace(&input, &lasso, state_limit),
        Command::CheckUnambiguous {
            input,
            algo,
            state_limit,
            product_limit,
        } => commands::check_unambiguous(&input, algo, state_limit, product_limit),
        Command::Diff {
            input,
            algo,
            max_prefix,
            max_period,
            state_limit,
            json,
        } => commands::diff(&input, algo, max_prefix, max_period, state_limit, json),
        Command::Campaign {
            seed,
            count,
            states,
            alphabet,
            algos,
            samples,
            max_prefix,
            max_period,
            state_limit,
            out,
            artifacts,
            expect_brv_ambiguity,
        } => commands::campaign(commands::CampaignArgs {
            seed,
            count,
            max_states: states as usize,
            alphabet_size: alphabet as usize,
            algos,
            samples,
            max_prefix,
            max_period,
            state_limit,
            out,
            artifacts,
            expect_brv_ambiguity,
        }),
        Command::Replay { artifact } => commands::replay(&artifact),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("awa2uba: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
