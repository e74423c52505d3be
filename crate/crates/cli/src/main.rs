mod bench;
mod commands;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icr_core::forge::Family;
use icr_core::IcrError;

#[derive(Parser)]
#[command(name = "icr", version, about = "Interview-minimal stable matching workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a market from a random family or from a graph.
    Gen(GenArgs),
    /// Validate files and report ties, compatibility and stability.
    Check(CheckArgs),
    /// Compute a minimum interview set and write its certificate.
    Solve(SolveArgs),
    /// Run the brute-force oracle.
    Oracle(OracleArgs),
    /// Solve many generated markets and write one CSV row per trial.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
pub struct FamilyArgs {
    /// tiered, random-smti, master-ties or one-side-strict
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long, default_value_t = 4)]
    pub men: usize,
    #[arg(long, default_value_t = 4)]
    pub women: usize,
    /// Comma-separated tier sizes (tiered) or shared class sizes (master-ties).
    #[arg(long, value_delimiter = ',')]
    pub tiers: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub tie_cap: usize,
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Smti,
    Smt,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Smti => "vc3-smti",
            Construction::Smt => "vc3-smt",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Smti,
    Smpi,
}

#[derive(Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Build the market from this graph instead of a random family.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "smti")]
    pub construction: Construction,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Write PREFIX.inst, PREFIX.truth and, for graphs, PREFIX.match.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub refined: Option<PathBuf>,
    /// A solve certificate; its refined instance is checked like --refined.
    #[arg(long, conflicts_with = "refined")]
    pub certificate: Option<PathBuf>,
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[arg(long)]
    pub matching: Option<PathBuf>,
    /// Largest side for the super-stable existence search.
    #[arg(long, default_value_t = 8)]
    pub cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VcArg {
    Auto,
    General,
}

#[derive(Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    pub truth: PathBuf,
    #[arg(long, required_unless_present = "min_icr")]
    pub matching: Option<PathBuf>,
    /// Let the solver pick the best stable matching.
    #[arg(long)]
    pub min_icr: bool,
    #[arg(long)]
    pub oracle_verify: bool,
    /// Oracle cap on acceptable pairs; also caps the side size when enumerating matchings.
    #[arg(long, default_value_t = 16)]
    pub cap: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub vc: VcArg,
    /// Certificate path; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Pure,
    Pruned,
}

#[derive(Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    pub truth: PathBuf,
    /// Without a matching the oracle searches over all matchings.
    #[arg(long)]
    pub matching: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pruned")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 16)]
    pub cap: usize,
}

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Run every `*.graph` file in this directory through a construction.
    #[arg(long, conflicts_with_all = ["family", "census"])]
    pub graph_dir: Option<PathBuf>,
    /// Run every connected graph with at most this many vertices and maximum
    /// degree 3 through a construction.
    #[arg(long, conflicts_with = "family")]
    pub census: Option<usize>,
    #[arg(long, value_enum, default_value = "smti")]
    pub construction: Construction,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Oracle cap on acceptable pairs; larger markets get a blank oracle_cost.
    #[arg(long, default_value_t = 16)]
    pub cap: usize,
    /// Leave runtime_ms blank so that reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// CSV path; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    /// A core error, tagged with the file it came from when there is one.
    Core(Option<PathBuf>, IcrError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Io(..)
            | CliError::Core(_, IcrError::Parse { .. } | IcrError::BadParams(_)) => 2,
            CliError::Core(..) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(Some(path), e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(None, e) => write!(f, "{e}"),
        }
    }
}

impl From<IcrError> for CliError {
    fn from(e: IcrError) -> Self {
        CliError::Core(None, e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Tags a core error with the file being read.
pub fn at<T>(path: &Path, r: icr_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Core(Some(path.to_path_buf()), e))
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => commands::gen(&args),
        Command::Check(args) => commands::check(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Oracle(args) => commands::oracle(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
