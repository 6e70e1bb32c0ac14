//! `edgelim` command-line front end.

mod commands;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success, 1 I/O or parse failure, 2 invalid flags,
/// 3 residuals above tolerance, 4 property violation.
#[derive(Debug)]
pub enum CliError {
    Lib(edgelim::Error),
    Usage(String),
    Residual(String),
    Property(String),
}

impl From<edgelim::Error> for CliError {
    fn from(e: edgelim::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Residual(_) => 3,
            CliError::Property(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Residual(m) | CliError::Property(m) => f.write_str(m),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "edgelim",
    version,
    about = "Hermitian eigensolver by successive rank-1 edge elimination"
)]
struct Cli {
    /// Worker threads for baseline trials, root finding and vector updates.
    #[arg(long, global = true, env = "EDGELIM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// Graph given as a file (Matrix Market or hypergraph text) or an inline spec.
///
/// Spec grammar: `chain:N`, `lattice:RxC`, `disc:P:seedS`,
/// `randsym:N:D:seedS` (D a decimal or a fraction like 8/128).
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GraphArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Figure {
    Table1,
    Fig3,
    Fig4,
    Fig5,
    Fig67,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
pub enum GenFormat {
    Mtx,
    Hypergraph,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as Matrix Market or hypergraph text.
    Generate {
        #[arg(long)]
        spec: String,
        /// Fill the pattern with seeded random Hermitian values.
        #[arg(long)]
        values: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "mtx")]
        format: GenFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a greedy elimination ordering and its cost.
    Order {
        #[command(flatten)]
        graph: GraphArgs,
        /// mi, mr, mc1, mc2 or random:<seed>
        #[arg(long)]
        heuristic: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cost of a given ordering.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        /// JSON array file, or inline comma-separated edge ids.
        #[arg(long)]
        ordering: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statistics of seeded random orderings.
    Baseline {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigendecomposition of a Hermitian Matrix Market file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// mi, mr, mc1, mc2, random:<seed> or an ordering file.
        #[arg(long, default_value = "mr")]
        ordering: String,
        #[arg(long, default_value = "lower")]
        side: String,
        #[arg(long, default_value_t = 0.0)]
        drop_tol: f64,
        /// Also write the eigenvectors.
        #[arg(long)]
        eigvecs: bool,
        /// Largest accepted ‖AQ−QΛ‖_F/‖A‖_F and ‖QᴴQ−I‖_F.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check symbolic predictions against numeric elimination and the
    /// fill/growth equivalence.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "mr")]
        ordering: String,
        /// Seed for random values when the input has none.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        drop_tol: f64,
        /// Test hook: skip one symbolic update (default step 0).
        #[arg(long, num_args = 0..=1, default_missing_value = "0", hide = true)]
        inject_skip_update: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual hypergraph in the text format.
    Dual {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fill of symbolic elimination on the edge adjacency pattern versus
    /// hyperedge growth.
    AnalyzeFill {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "mr")]
        ordering: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one experiment's artifacts and a comparison file.
    Reproduce {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn run(cli: Cli) -> CliResult {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set thread count: {e}")))?;
    }
    match cli.command {
        Command::Generate {
            spec,
            values,
            seed,
            format,
            out,
        } => commands::generate(&spec, values, seed, format, &out),
        Command::Order { graph, heuristic, out } => commands::order(&graph, &heuristic, out.as_deref()),
        Command::Simulate { graph, ordering, out } => commands::simulate(&graph, &ordering, out.as_deref()),
        Command::Baseline {
            graph,
            trials,
            seed,
            out,
        } => commands::baseline(&graph, trials, seed, out.as_deref()),
        Command::Solve {
            input,
            ordering,
            side,
            drop_tol,
            eigvecs,
            tol,
            out,
        } => commands::solve(&input, &ordering, &side, drop_tol, eigvecs, tol, out.as_deref()),
        Command::Verify {
            graph,
            ordering,
            seed,
            drop_tol,
            inject_skip_update,
            out,
        } => commands::verify(&graph, &ordering, seed, drop_tol, inject_skip_update, out.as_deref()),
        Command::Dual { graph, out } => commands::dual(&graph, &out),
        Command::AnalyzeFill { graph, ordering, out } => commands::analyze_fill(&graph, &ordering, out.as_deref()),
        Command::Reproduce {
            figure,
            out,
            trials,
            seed,
        } => reproduce::reproduce(figure, &out, trials, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
