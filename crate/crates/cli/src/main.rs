//! `kcross`: verification, generation, search and proof-machinery runs over
//! set families.
//!
//! Exit codes: 0 when the property holds (or the command succeeded), 1 when it
//! fails and a witness or violation was printed, 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kcross_core::search::Universe;
use kcross_core::Mode;

#[derive(Parser)]
#[command(name = "kcross", version, about = "Tools for k-cross-free set families")]
struct Cli {
    /// Output format; `csv` applies to `table` only, which defaults to it
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a family has no k pairwise crossing members
    Check {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        /// Family file, or `-` for standard input
        file: PathBuf,
    },
    /// Relation between the two sets of a two-set family
    Classify { file: PathBuf },
    /// Minimum chain partition with a maximum antichain certificate
    Decompose { file: PathBuf },
    /// Emit a family file
    #[command(subcommand)]
    Gen(GenCommand),
    /// Halve a strictly k-cross-free family into a weakly k-cross-free one
    Reduce {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// Continuous chains: extraction, C1–C4 selection and checking
    #[command(subcommand)]
    Chains(ChainsCommand),
    /// Cross-support trees: validation, extraction, building, pruning
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Exact maximum k-cross-free subfamily of a universe
    Search(SearchArgs),
    /// Exact maxima over a range of n and k next to the closed-form bounds
    Table(TableArgs),
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Laminar family of the maximum size 2n
    Laminar {
        #[arg(long)]
        n: usize,
    },
    /// Nonempty proper cyclic intervals
    Intervals {
        #[arg(long)]
        n: usize,
        /// Also include the empty set and the ground set
        #[arg(long)]
        trivial: bool,
    },
    /// Random k-cross-free family
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
pub enum ChainsCommand {
    /// Greedy maximal collection of disjoint continuous chains of length h
    Extract {
        #[arg(long)]
        h: usize,
        file: PathBuf,
    },
    /// Filter a chain collection down to chains satisfying C1–C4
    Select {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = kcross_core::proof::selection::DEFAULT_SIZE_MULTIPLIER)]
        multiplier: usize,
        #[arg(long)]
        seed: u64,
        /// Also write the drawn ordering to this file
        #[arg(long)]
        ordering_out: Option<PathBuf>,
        chains: PathBuf,
    },
    /// Verify C1–C4 for an index set and ordering
    Check {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = kcross_core::proof::selection::DEFAULT_SIZE_MULTIPLIER)]
        multiplier: usize,
        /// Comma-separated chain indices; empty for none
        #[arg(long, value_parser = parse_indices)]
        indices: Indices,
        #[arg(long)]
        ordering: PathBuf,
        chains: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum TreeCommand {
    /// Check perfection and T1–T5, with T6–T8 reported separately
    Validate {
        #[command(flatten)]
        ctx: TreeContext,
        tree: PathBuf,
    },
    /// k pairwise weakly crossing sets read off a tree of height k
    Extract {
        #[command(flatten)]
        ctx: TreeContext,
        #[arg(long)]
        k: usize,
        tree: PathBuf,
    },
    /// Grow a cross-support tree level by level
    Build {
        #[command(flatten)]
        ctx: TreeContext,
        /// Comma-separated chain indices; all chains when omitted
        #[arg(long, value_parser = parse_indices)]
        indices: Option<Indices>,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        branching: usize,
        /// Size of each reserved pool; defaults to the chain length
        #[arg(long)]
        pool: Option<usize>,
    },
    /// Keep only some root children, by position
    Prune {
        #[arg(long, value_parser = parse_indices)]
        keep: Indices,
        tree: PathBuf,
    },
}

#[derive(Args)]
pub struct TreeContext {
    #[arg(long)]
    chains: PathBuf,
    #[arg(long)]
    ordering: PathBuf,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    /// Built-in universe; requires --n
    #[arg(long, value_parser = parse_universe, requires = "n", conflicts_with = "file")]
    universe: Option<Universe>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Print node count and time to standard error
    #[arg(long)]
    stats: bool,
    /// Universe family file, instead of --universe
    #[arg(required_unless_present = "universe")]
    file: Option<PathBuf>,
}

#[derive(Args)]
pub struct TableArgs {
    /// `a..b`, `a..=b` (both inclusive) or a single value
    #[arg(long, value_parser = parse_range)]
    n: Span,
    #[arg(long, value_parser = parse_range)]
    k: Span,
    #[arg(long, value_parser = parse_universe)]
    universe: Universe,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Debug)]
pub struct Indices(pub Vec<usize>);

#[derive(Clone, Copy, Debug)]
pub struct Span(pub usize, pub usize);

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: kcross_core::Error| e.to_string())
}

fn parse_universe(s: &str) -> Result<Universe, String> {
    s.parse().map_err(|e: kcross_core::Error| e.to_string())
}

fn parse_indices(s: &str) -> Result<Indices, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("malformed index '{t}'")))
        .collect::<Result<Vec<_>, _>>()
        .map(Indices)
}

fn parse_range(s: &str) -> Result<Span, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("malformed number '{t}'"));
    let span = match s.split_once("..") {
        Some((a, b)) => Span(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Span(v, v)
        }
    };
    if span.0 > span.1 {
        return Err(format!("empty range '{s}'"));
    }
    Ok(span)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
