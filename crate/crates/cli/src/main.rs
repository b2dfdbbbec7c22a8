//! `laakso`: spectra, eigensolves, zeta functions and Casimir forces on Laakso spaces.
//!
//! Exit status: 0 on success, 1 on I/O failure, 2 on invalid input, 3 when a numerical solve
//! fails. Failures print a one-line JSON error record to stderr.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "laakso", version, about = "Spectral analysis of Laakso spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Level products, Hausdorff and spectral dimensions, pole lattice and closed-form shape counts.
    Describe(DescribeArgs),
    /// Closed-form eigenvalue lines with multiplicities.
    Spectrum(SpectrumArgs),
    /// Lowest eigenvalues of the discretized Hamiltonian on F_n.
    Solve(SolveArgs),
    /// Spectral zeta function of a periodic space or a plate configuration.
    Zeta(ZetaArgs),
    /// Regularized Casimir energy and force between two plates.
    Casimir(CasimirArgs),
    /// V, loop and cross counts of F_n, optionally split by the well or plate walls.
    Census(CensusArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SequenceArgs {
    /// Subdivision values j_1, j_2, ... as a comma list.
    #[arg(long = "j", value_name = "LIST")]
    pub j: Option<String>,
    /// Repeat the list periodically instead of treating it as an explicit prefix.
    #[arg(long)]
    pub periodic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PlateArgs {
    /// Plate configuration `N,Z,X0`: j = N at every level, Z node columns strictly between the
    /// plates, plates at x = 1/2 -+ X0.
    #[arg(long, value_name = "N,Z,X0")]
    pub plates: Option<String>,
    /// Reduced Planck constant scaling the Casimir energy.
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct DescribeArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Highest level reported; defaults to the period, or the list length for explicit prefixes.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    Free,
    SquareWell,
    Plates,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = SpectrumKind::Free)]
    pub kind: SpectrumKind,
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[command(flatten)]
    pub plates: PlateArgs,
    /// Largest eigenvalue reported.
    #[arg(long)]
    pub lambda_max: f64,
    /// One line per family, level and mode instead of merging equal eigenvalues.
    #[arg(long)]
    pub per_family: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Plates turn the graph into the stretched plate geometry with conducting plate columns.
    #[command(flatten)]
    pub plates: PlateArgs,
    /// Graph level.
    #[arg(long)]
    pub n: usize,
    /// free, square-well, coulomb or parabolic.
    #[arg(long, default_value = "free")]
    pub potential: String,
    /// Value standing in for infinite potentials.
    #[arg(long, default_value_t = laakso_core::numeric::DEFAULT_CUTOFF)]
    pub cutoff: f64,
    /// Interior grid points per edge.
    #[arg(long, default_value_t = laakso_core::numeric::DEFAULT_MESH)]
    pub mesh: usize,
    /// Number of eigenvalues.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Relative tolerance for grouping eigenvalues into clusters.
    #[arg(long, default_value_t = 1e-2)]
    pub cluster_tol: f64,
    /// Residual tolerance relative to max(1, |lambda|).
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Disable data parallelism in the solver.
    #[arg(long)]
    pub sequential: bool,
    /// Write the trace (x, row, value) of eigenfunction INDEX to --trace-output as CSV.
    #[arg(long, value_name = "INDEX", requires = "trace_output")]
    pub trace: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub trace_output: Option<PathBuf>,
    /// Write the Hamiltonian in coordinate format to PATH.
    #[arg(long, value_name = "PATH")]
    pub matrix_output: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// `--j` is always read as periodic here.
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[command(flatten)]
    pub plates: PlateArgs,
    /// Real part of s.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Imaginary part of s; periodic spaces only.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub s_im: f64,
    /// Also list both pole families for m in -M..=M.
    #[arg(long, value_name = "M")]
    pub poles: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CasimirArgs {
    #[command(flatten)]
    pub plates: PlateArgs,
    /// Also tabulate energy and force at this many evenly spaced X0 in (0, 1/2).
    #[arg(long, value_name = "POINTS")]
    pub sweep: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    SquareWell,
    Plates,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[command(flatten)]
    pub plates: PlateArgs,
    #[arg(long)]
    pub n: usize,
    /// Split shapes by the walls of a region.
    #[arg(long, value_enum)]
    pub region: Option<RegionArg>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Solver(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    fn record(&self) -> serde_json::Value {
        let (kind, message) = match self {
            Failure::Invalid(m) => ("invalid-input", m),
            Failure::Solver(m) => ("solver-failure", m),
            Failure::Io(m) => ("io", m),
        };
        json!({"error": {"kind": kind, "message": message, "exit_code": self.code()}})
    }
}

impl From<laakso_core::Error> for Failure {
    fn from(e: laakso_core::Error) -> Self {
        if e.is_solver_failure() {
            Failure::Solver(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("LAAKSO_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Invalid(format!("LAAKSO_THREADS = {raw:?} is not a positive integer")))?;
    laakso_core::par::configure_threads(threads).map_err(Failure::Invalid)
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Describe(a) => commands::describe(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Solve(a) => commands::solve(&a),
        Command::Zeta(a) => commands::zeta(&a),
        Command::Casimir(a) => commands::casimir(&a),
        Command::Census(a) => commands::census(&a),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprint!("{}", output::canonical_json(&f.record()));
    ExitCode::from(f.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            return fail(&Failure::Invalid(e.to_string().trim_end().to_string()));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}
