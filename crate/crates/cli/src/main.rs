//! Command-line front end for the hypergrass library.

mod commands;
mod config;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithArg {
    /// Exact up to n = 8, certified floats beyond.
    Auto,
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "hypergrass", version, about = "Sorted collections, circuit triangulations and arrangements of largest minors")]
pub struct Cli {
    /// Output format; defaults to the config file's, then json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML config file; overrides HYPERGRASS_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cap on C(n, k).
    #[arg(long, global = true)]
    pub max_subsets: Option<u64>,
    /// Cap on the number of maximal cells.
    #[arg(long, global = true)]
    pub max_collections: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Shape {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

/// A maximal cell, given by members or by its circuit permutation.
#[derive(Args, Debug, Clone)]
pub struct CellArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    /// Members, e.g. "1,2;1,3;1,4;2,4".
    #[arg(long = "J", value_name = "COLLECTION")]
    pub j: Option<String>,
    /// Circuit permutation, e.g. "56178243" (needs --k).
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every maximal sorted collection.
    Enumerate(Shape),
    /// The dual graph of the circuit triangulation.
    DualGraph(Shape),
    /// Cubical distance from a cell to a subset or to another cell.
    Cubedist {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long = "W", value_name = "SUBSET", conflicts_with = "to")]
        w: Option<String>,
        /// Target cell members.
        #[arg(long)]
        to: Option<String>,
    },
    /// All minors of a matrix and their arrangement.
    Eval {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Rescale columns so a cell's minors are the largest, all equal to one.
    Normalize {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, value_enum, default_value = "auto")]
        arith: ArithArg,
    },
    /// A point whose second largest minor is the given neighbour subset.
    Witness {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long = "W", value_name = "SUBSET")]
        w: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        arith: ArithArg,
    },
    /// Order on all minors forced by a top cell.
    Poset {
        #[command(flatten)]
        cell: CellArgs,
        /// Intersect the orders of this many random normalised points instead.
        #[arg(long)]
        empirical: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Oriented Young grid of a subset sorted with part of a cell.
    Grid {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long = "W", value_name = "SUBSET")]
        w: String,
    },
    /// Run a verification experiment.
    Verify {
        #[arg(value_parser = parse_experiment)]
        experiment: hypergrass::verification::Experiment,
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Allow certified float arithmetic for n > 8.
        #[arg(long)]
        float: bool,
    },
}

fn parse_experiment(s: &str) -> Result<hypergrass::verification::Experiment, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = hypergrass::verification::Experiment::ALL.iter().map(|e| e.id()).collect();
        format!("unknown experiment; expected one of {}", names.join(", "))
    })
}

pub enum CliError {
    Usage(String),
    Domain(hypergrass::Error),
    Io(String),
    /// A proved statement failed; the report is still written.
    Verification(String),
}

impl From<hypergrass::Error> for CliError {
    fn from(e: hypergrass::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

/// What a command produced, in every format it supports.
pub struct Rendered {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = Config::load(cli.config.as_deref()).map_err(CliError::Usage)?;
    if let Some(v) = cli.max_subsets {
        cfg.limits.max_subsets = v;
    }
    if let Some(v) = cli.max_collections {
        cfg.limits.max_collections = v;
    }
    cfg.limits.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let format = cli.format.or(cfg.format).unwrap_or(Format::Json);
    let verify = matches!(cli.command, Command::Verify { .. });
    let (rendered, verdict) = commands::execute(cli.command, &cfg)?;
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => rendered.csv.clone().ok_or_else(|| CliError::Usage("this command has no csv output".into()))?,
        Format::Dot => rendered.dot.clone().ok_or_else(|| CliError::Usage("this command has no dot output".into()))?,
    };
    emit(&text, cli.out.as_ref())?;
    // reports written to a file get a csv summary next to them
    if let (true, Some(path), Format::Json, Some(csv)) = (verify, cli.out.as_ref(), format, rendered.csv.as_ref()) {
        emit(csv, Some(&path.with_extension("csv")))?;
    }
    match verdict {
        Some(why) => Err(CliError::Verification(why)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("usage error: {m}"),
                CliError::Domain(err) => eprintln!("error: {err}"),
                CliError::Io(m) => eprintln!("error: {m}"),
                CliError::Verification(m) => eprintln!("verification failed: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
