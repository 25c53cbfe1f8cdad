//! Command-line frontend for the cocycle library: loads a JSON run
//! configuration, dispatches to the analysis routines, and writes
//! deterministic CSV or JSON artifacts.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

/// How a run can fail: bad input (exit 2) or a numerical routine giving up
/// (exit 3, with the library error name in the diagnostic).
pub enum Failure {
    Validation(String),
    Numerical(cocycle_lab::Error),
}

impl From<cocycle_lab::Error> for Failure {
    fn from(e: cocycle_lab::Error) -> Self {
        Failure::Numerical(e)
    }
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Numerical(e) => {
                eprintln!("error[{}]: {e}", e.variant_name());
                ExitCode::from(3)
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cocycle-lab",
    version,
    about = "Linear cocycles over subshifts of finite type: growth rates, \
             holonomies, extremal norms, maximizing sets"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration (subshift, cocycle, budgets, tolerances)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for output artifacts; without it they go to stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Artifact format (default csv, or the config's output.format)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket the top growth rate between periodic lower and norm upper bounds
    Beta(BetaArgs),
    /// Table of periodic lower bounds converging to the growth rate
    BergerWang,
    /// Value-iterate the Barabanov fixed-point equation and emit its unit ball
    Barabanov(BarabanovArgs),
    /// Check whether a norm certifies a growth rate, with the worst witness
    CheckExtremal(CheckExtremalArgs),
    /// Stable or unstable holonomy between two points, with convergence trace
    Holonomy(HolonomyArgs),
    /// Periodic-orbit approximation of the maximizing sets, with exponents
    Mather(MatherArgs),
    /// Empirical dominated-splitting detection from singular value gaps
    Splitting(SplittingArgs),
    /// Extract a periodic orbit shadowing a finite sample of points
    Closing(ClosingArgs),
    /// Scripted worked examples
    Example(ExampleArgs),
}

#[derive(Args)]
struct BetaArgs {
    /// Leaf budget for the word enumeration behind the upper bound
    #[arg(long, default_value_t = 65536)]
    budget: usize,
}

#[derive(Args)]
struct BarabanovArgs {
    /// Growth rate to calibrate against; estimated from the cocycle when absent
    #[arg(long)]
    beta: Option<f64>,
    /// Number of boundary samples in the emitted unit ball
    #[arg(long, default_value_t = 64)]
    resolution: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormKind {
    Euclidean,
    Max,
    Polytope,
    Barabanov,
}

#[derive(Args)]
struct CheckExtremalArgs {
    /// Norm to test
    #[arg(long, value_enum, default_value_t = NormKind::Euclidean)]
    norm: NormKind,
    /// Growth rate the norm should certify
    #[arg(long)]
    beta: f64,
    /// Vertex file (JSON array of coordinate arrays) for --norm polytope
    #[arg(long)]
    vertices: Option<PathBuf>,
    /// Evaluation depth for --norm barabanov
    #[arg(long, default_value_t = 12)]
    depth: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Stable,
    Unstable,
}

#[derive(Args)]
struct HolonomyArgs {
    /// Base point, written left|core|right|origin (e.g. 0|1|0|0)
    #[arg(long)]
    base: String,
    /// Target point on the base point's stable (or unstable) set
    #[arg(long)]
    target: String,
    #[arg(long, value_enum, default_value_t = Side::Stable)]
    side: Side,
    /// Convergence tolerance; defaults to the config tolerance "holonomy"
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap
    #[arg(long, default_value_t = 200)]
    n_max: usize,
}

#[derive(Args)]
struct MatherArgs {
    /// Number of top exponents whose sum is maximized
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Selection tolerance; defaults to the config tolerance "mather"
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SplittingArgs {
    /// Splitting index
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Comma-separated periodic words whose orbits serve as sample points
    #[arg(long, default_value = "0")]
    orbits: String,
    /// Depth of the product scan; defaults to the config budget n_max
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClosingSample {
    /// Sample the full orbit of this periodic word
    #[arg(long)]
    word: Option<String>,
    /// Sample the orbit of a seeded random word of this period
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Args)]
struct ClosingArgs {
    #[command(flatten)]
    sample: ClosingSample,
    /// Period bound for the extracted orbit
    #[arg(long, default_value_t = 16)]
    n: usize,
    /// Distance exponent: the orbit must stay within n^-tau of the sample
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    /// Rotation-plus-contraction pair: growth rate 0, extremal max norm,
    /// homoclinic loop obstructing any Riemannian extremal norm
    NoRiemannian,
    /// Perturbed rotation aligning a long periodic orbit with the expanding
    /// direction, pushing the growth rate strictly above 0
    Unlocked,
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(value_enum)]
    scenario: Scenario,
    /// Rotation steps per period in the unlocked scenario (2 mod 4)
    #[arg(long, default_value_t = 6)]
    m: usize,
}

fn thread_cap() -> Result<(), Failure> {
    let Ok(v) = std::env::var("COCYCLE_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        Failure::Validation(format!(
            "COCYCLE_LAB_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    // runs before any parallel work, so the global pool is still buildable
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    thread_cap()?;
    let cfg = match &cli.common.config {
        Some(path) => Some(config::load(path)?),
        None => None,
    };
    // CLI flags win over the config's output section, which wins over the
    // defaults (csv, stdout)
    let output = cfg.as_ref().and_then(|c| c.output.as_ref());
    let out_dir = cli
        .common
        .out
        .clone()
        .or_else(|| output.and_then(|o| o.path.clone()));
    let format = cli
        .common
        .format
        .or_else(|| output.and_then(|o| o.format))
        .unwrap_or(Format::Csv);
    let sink = report::Sink::new(out_dir, format)?;
    let need = || {
        cfg.as_ref()
            .ok_or_else(|| Failure::Validation("this command needs --config <file>".into()))
    };
    match &cli.command {
        Command::Beta(args) => commands::beta(need()?, args, &sink),
        Command::BergerWang => commands::berger_wang(need()?, &sink),
        Command::Barabanov(args) => commands::barabanov(need()?, args, &sink),
        Command::CheckExtremal(args) => commands::check_extremal(need()?, args, &sink),
        Command::Holonomy(args) => commands::holonomy(need()?, args, &sink),
        Command::Mather(args) => commands::mather(need()?, args, &sink),
        Command::Splitting(args) => commands::splitting(need()?, args, &sink),
        Command::Closing(args) => commands::closing(need()?, cli.common.seed, args, &sink),
        Command::Example(args) => commands::example(args, &sink),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
