//! `chebyprop` command-line tool: single queries, ground-truth generation,
//! benchmark sweeps and edge-list conversion.
//!
//! Exit codes: 0 on success, 1 on file or runtime errors, 2 on usage errors
//! (unknown algorithm, malformed kernel spec, bad flag values).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use chebyprop::eval::SourceSelection;
use chebyprop::Algorithm;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "chebyprop", version, about = "Approximate graph propagation (PPR, heat kernel, custom kernels)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one query and print the top entries and statistics as JSON.
    Query(QueryArgs),
    /// Sweep algorithms, sources and tolerances against ground truth; writes CSV.
    Bench(BenchArgs),
    /// Compute and cache ground-truth vectors.
    Truth(TruthArgs),
    /// Convert an edge list to the binary CSR format.
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
struct GraphKernel {
    /// Edge list or binary CSR file.
    #[arg(long)]
    graph: PathBuf,
    /// Kernel spec: `ppr:alpha=0.2`, `hkpr:t=5` or `custom:file=coeffs.json`.
    #[arg(long)]
    kernel: String,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(flatten)]
    input: GraphKernel,
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    /// Source node label as it appears in the graph file.
    #[arg(long)]
    source: u64,
    /// Truncation tolerance for `pw` and `chebypower`; for the push
    /// algorithms it fixes the truncation instead of deriving it from `--eps-a`.
    #[arg(long, value_parser = parse_unit_interval)]
    eps: Option<f64>,
    /// Degree-normalized error target for `push` and `chebypush`.
    #[arg(long = "eps-a", default_value_t = 1e-7, value_parser = parse_nonneg)]
    eps_a: f64,
    /// Relative error for `chebypush-rw`.
    #[arg(long = "eps-r", default_value_t = 0.5, value_parser = parse_unit_interval)]
    eps_r: f64,
    /// Significance threshold for `chebypush-rw` (default 1/n).
    #[arg(long, value_parser = parse_unit_interval)]
    delta: Option<f64>,
    #[arg(long = "alpha-walks-seed", default_value_t = 0)]
    walk_seed: u64,
    /// Number of entries to report.
    #[arg(long, default_value_t = 50)]
    top: usize,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    input: GraphKernel,
    /// Algorithms to run, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm,
          default_value = "pw,push,chebypower,chebypush")]
    algos: Vec<Algorithm>,
    /// Query sources: `uniform:k` or `topdeg:k`.
    #[arg(long, default_value = "uniform:10", value_parser = parse_selection)]
    sources: SourceSelection,
    /// Explicit source labels; overrides `--sources`.
    #[arg(long = "source", value_delimiter = ',')]
    source_labels: Vec<u64>,
    /// Seed for uniform source selection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation tolerances swept by `pw` and `chebypower`.
    #[arg(long, value_delimiter = ',', default_value = "1e-3,1e-5,1e-7,1e-9")]
    eps: Vec<String>,
    /// Error targets swept by `push` and `chebypush`.
    #[arg(long = "eps-a", value_delimiter = ',', default_value = "1e-3,1e-5,1e-7,1e-9")]
    eps_a: Vec<String>,
    /// Relative errors swept by `chebypush-rw`.
    #[arg(long = "eps-r", value_delimiter = ',', default_value = "0.5")]
    eps_r: Vec<String>,
    /// Fixed truncation tolerance for the push algorithms (default: eps_a / 2).
    #[arg(long = "trunc-eps", value_parser = parse_unit_interval)]
    trunc_eps: Option<f64>,
    #[arg(long, value_parser = parse_unit_interval)]
    delta: Option<f64>,
    #[arg(long = "alpha-walks-seed", default_value_t = 0)]
    walk_seed: u64,
    /// Worker threads for running sources in parallel (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Dataset name for the CSV (default: graph file stem).
    #[arg(long)]
    dataset: Option<String>,
    /// Ground-truth cache directory (default: $CHEBYPROP_CACHE_DIR or ./truth-cache).
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TruthArgs {
    #[command(flatten)]
    input: GraphKernel,
    #[arg(long, default_value = "uniform:10", value_parser = parse_selection)]
    sources: SourceSelection,
    #[arg(long = "source", value_delimiter = ',')]
    source_labels: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| e.to_string())
}

fn parse_selection(s: &str) -> Result<SourceSelection, String> {
    s.parse::<SourceSelection>().map_err(|e| e.to_string())
}

fn parse_unit_interval(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v < 1.0 => Ok(v),
        Ok(v) => Err(format!("{v} is not in (0, 1)")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_nonneg(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a nonnegative number")),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(args) => commands::query(args),
        Command::Bench(args) => commands::bench(args),
        Command::Truth(args) => commands::truth(args),
        Command::Convert(args) => commands::convert(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
