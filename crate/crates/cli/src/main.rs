use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

#[derive(Parser, Debug)]
#[command(
    name = "wsat",
    version,
    about = "Weak saturation numbers of complete bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `--s/--t` for `K_{s,t}`, or `--r` for `K_r`.
#[derive(Args, Debug, Clone)]
pub struct PatternArgs {
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Clique order, instead of --s/--t.
    #[arg(long, conflicts_with_all = ["s", "t"])]
    pub r: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a member of one of the extremal families as graph6.
    Construct(ConstructArgs),
    /// Run the bootstrap closure of a graph6 graph.
    Closure(ClosureArgs),
    /// Check a certificate file; prints VALID or INVALID.
    Verify(VerifyArgs),
    /// Exact wsat(n, F) by exhaustive search.
    Search(SearchArgs),
    /// Exact wsat(n, K_{2,t}) against the closed form over ranges of t and n.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// complement-path, complement-path-union-k1, gnt, xyz, h or clique-join.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long)]
    pub y: Option<usize>,
    #[arg(long)]
    pub y1: Option<usize>,
    #[arg(long)]
    pub y2: Option<usize>,
    #[arg(long)]
    pub z: Option<usize>,
    /// Emit the family's addition order as a certificate (to --cert, or
    /// after the graph6 line).
    #[arg(long)]
    pub emit_order: bool,
    /// Write the certificate here; implies --emit-order.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    /// graph6 input file; standard input when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// Write the base graph and the closure steps as a certificate.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON file.
    pub certificate: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// Search from zero edges without using any closed form.
    #[arg(long)]
    pub independent: bool,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    /// Test every labeled graph instead of one per isomorphism class.
    #[arg(long)]
    pub no_dedup: bool,
    /// Skip disconnected graphs (K_{2,t} only).
    #[arg(long)]
    pub prune_connected: bool,
    /// Skip edge counts the log already records as empty for this search.
    #[arg(long)]
    pub resume: bool,
    /// Write a certificate for the reported witness.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long, default_value = "wsat-results.log")]
    pub log: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// `t` or an inclusive range `lo..hi`.
    #[arg(long)]
    pub t: String,
    /// `n` or an inclusive range `lo..hi`.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long)]
    pub no_dedup: bool,
    #[arg(long, default_value = "wsat-results.log")]
    pub log: PathBuf,
    #[arg(long)]
    pub json: bool,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |c| c.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => commands::construct(&a),
        Command::Closure(a) => commands::closure(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Search(a) => commands::search(&a),
        Command::Table(a) => commands::table(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
