use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horocenter::centering::SolverConfig;
use horocenter::polytope::{SolidKind, DEFAULT_EDGE_TOL};

mod batch;
mod commands;
mod report;

#[derive(Parser)]
#[command(
    name = "horocenter",
    version,
    about = "Möbius centering of sphere point sets and canonical edge-tangent polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Center a JSON point set so that its barycenter is the origin.
    Center {
        /// Point-set file, or a directory of them.
        input: PathBuf,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Project rows that are not unit vectors onto the sphere instead of rejecting them.
        #[arg(long)]
        renormalize: bool,
    },
    /// Move an edge-tangent OFF polytope to its canonical position.
    Canonicalize {
        /// OFF file, or a directory of them.
        input: PathBuf,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = DEFAULT_EDGE_TOL)]
        edge_tol: f64,
    },
    /// Write a midsphere-normalized Platonic solid as OFF.
    Gen {
        /// tetrahedron, cube, octahedron, dodecahedron or icosahedron
        kind: SolidKind,
        /// Seed of a random sphere-fixing perturbation.
        #[arg(long)]
        seed: Option<u64>,
        /// Largest rapidity of the perturbation.
        #[arg(long, default_value_t = 1.0)]
        rapidity: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a point set (.json) or polytope (.off) for centering and tangency.
    Verify {
        /// Input file, or a directory of them.
        input: PathBuf,
        #[command(flatten)]
        io: IoArgs,
        /// Tolerance per point on the barycenter sum of a point set.
        #[arg(long, default_value_t = SolverConfig::default().grad_tol)]
        grad_tol: f64,
        #[arg(long, default_value_t = DEFAULT_EDGE_TOL)]
        edge_tol: f64,
    },
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Output file (directory in batch mode); stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// JSON run report (directory in batch mode).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads for directory inputs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Leave the timestamp out of the report.
    #[arg(long)]
    no_timestamp: bool,
    /// Log solver progress to stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, default_value_t = SolverConfig::default().grad_tol)]
    grad_tol: f64,
    #[arg(long, default_value_t = SolverConfig::default().max_iters)]
    max_iters: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            grad_tol: self.grad_tol,
            max_iters: self.max_iters,
            ..SolverConfig::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Center {
            input,
            io,
            solver,
            renormalize,
        } => {
            let job = commands::Job::Center {
                solver: solver.config(),
                renormalize,
            };
            batch::run(&job, &input, &io.into())
        }
        Command::Canonicalize {
            input,
            io,
            solver,
            edge_tol,
        } => {
            let job = commands::Job::Canonicalize {
                solver: solver.config(),
                edge_tol,
            };
            batch::run(&job, &input, &io.into())
        }
        Command::Verify {
            input,
            io,
            grad_tol,
            edge_tol,
        } => {
            let job = commands::Job::Verify { grad_tol, edge_tol };
            batch::run(&job, &input, &io.into())
        }
        Command::Gen {
            kind,
            seed,
            rapidity,
            output,
        } => commands::gen(kind, seed, rapidity, output.as_deref()),
    };
    ExitCode::from(code as u8)
}

impl From<IoArgs> for batch::Io {
    fn from(a: IoArgs) -> Self {
        batch::Io {
            output: a.output,
            report: a.report,
            jobs: a.jobs.max(1),
            timestamp: !a.no_timestamp,
            verbose: a.verbose,
        }
    }
}
