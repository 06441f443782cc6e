mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "sigmaforge",
    version,
    about = "Subset sums and sumset bounds in finite abelian groups"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Machine-readable CSV on stdout.
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Σ(A) (or Σ of a sequence), its size and its stabilizer.
    Sigma(SigmaArgs),
    /// Evaluate one of the lower bounds on a set or sequence.
    Bound(BoundArgs),
    /// Run a verification harness.
    Verify(VerifyArgs),
    /// Search for k-sets with small Σ and trivial stabilizer.
    Search(SearchArgs),
    /// Grow a subset of A with large Σ, greedily or exactly.
    Construct(ConstructArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Group such as Z12 or Z2xZ4.
    #[arg(long)]
    group: String,

    /// Set literal, elements separated by `;`, e.g. "1;3" or "(0,1);(1,1)".
    #[arg(long, conflicts_with = "seq")]
    set: Option<String>,

    /// Sequence literal `elem:mult;elem:mult`, multiplicity defaults to 1.
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Args, Debug)]
struct SigmaArgs {
    #[command(flatten)]
    input: Input,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BoundKind {
    Kneser,
    Corollary,
    Main,
    Sequence,
    Recursive,
    CauchySchwarz,
}

#[derive(Args, Debug)]
struct BoundArgs {
    which: BoundKind,

    /// Group such as Z12 or Z2xZ4 (not needed for `recursive`).
    #[arg(long)]
    group: Option<String>,

    /// Set literal; repeat for the summands of `kneser`.
    #[arg(long, conflicts_with = "seq")]
    set: Vec<String>,

    #[arg(long)]
    seq: Option<String>,

    /// Argument of the recursive numerator N(u).
    #[arg(long)]
    u: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Theorem {
    Main,
    Corollary,
    KneserPairs,
    Kneser,
    Sequence,
    CauchySchwarz,
    Identities,
    Lemmas,
    Olson,
    Vu,
    Interval,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    theorem: Theorem,

    /// Fixed group; randomized runs otherwise draw a group per trial.
    #[arg(long)]
    group: Option<String>,

    /// Order bound for randomly drawn groups.
    #[arg(long)]
    max_order: Option<usize>,

    #[arg(long)]
    p: Option<u64>,

    #[arg(long)]
    n: Option<u64>,

    /// Random trials (or samples for `vu` past the enumeration cap).
    #[arg(long, default_value_t = 1000)]
    trials: u64,

    /// Required for every randomized run.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, default_value_t = 1)]
    workers: usize,

    /// Longest sequence or largest set drawn by `sequence` and `cauchy-schwarz`.
    #[arg(long, default_value_t = 12)]
    n_max: usize,

    /// Most summands drawn by `kneser`.
    #[arg(long, default_value_t = 5)]
    m_max: usize,

    /// Override the exhaustive order cap.
    #[arg(long)]
    cap: Option<usize>,

    /// Omit wall time so that repeated runs print identical reports.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    group: String,

    #[arg(long)]
    k: usize,

    #[arg(long, conflicts_with = "hillclimb")]
    exhaustive: bool,

    /// Swap-one-element local search; needs --seed and --restarts.
    #[arg(long)]
    hillclimb: bool,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    restarts: Option<u64>,

    /// Largest number of k-subsets enumerated in exhaustive mode.
    #[arg(long)]
    cap: Option<u128>,

    #[arg(long, default_value_t = 1)]
    workers: usize,

    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    group: String,

    #[arg(long)]
    set: String,

    #[arg(long)]
    u: usize,

    #[arg(long, conflicts_with = "exact")]
    greedy: bool,

    /// Exact best subset of size |A|/2.
    #[arg(long)]
    exact: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = Format::from_flags(cli.json, cli.csv);
    let outcome = match cli.command {
        Command::Sigma(args) => commands::sigma(&args, format),
        Command::Bound(args) => commands::bound(&args, format),
        Command::Verify(args) => commands::verify(&args, format),
        Command::Search(args) => commands::search(&args, format),
        Command::Construct(args) => commands::construct(&args, format),
    };
    match outcome {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
