use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sepfaces::Tolerance;
use sepfaces_cli::commands::{self, CliError, Output, Settings, SolveInput};

/// Separable-state faces and PPT entangled edge states in 2x4.
#[derive(Parser)]
#[command(name = "sepfaces", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, default_value_t = 1e-9)]
    tol_rank: f64,
    /// Grid intervals per axis for the pair-equation search.
    #[arg(long)]
    grid_steps: Option<usize>,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Params {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ten-solution pair (D, E), its states and report.
    Construct {
        #[command(flatten)]
        params: Params,
        /// Directory for states, bases, solutions and the report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Run every structural check and cross-check with the solver.
    Verify {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        shared: Shared,
    },
    /// Locate the boundary parameter and certify the edge state there.
    Path {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1.6)]
        t_max: f64,
        #[arg(long, default_value_t = 161)]
        samples: usize,
        /// Directory for curves, the boundary state and a summary.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Solve the pair equation for given subspaces or a state's ranges.
    Solve {
        /// Basis file for D.
        #[arg(long, requires = "e", conflicts_with = "state")]
        d: Option<PathBuf>,
        /// Basis file for E.
        #[arg(long, requires = "d")]
        e: Option<PathBuf>,
        /// State file; its range and partial-transpose range are used.
        #[arg(long, required_unless_present = "d")]
        state: Option<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Eigenvalues of rho_t and its partial transpose on [0, t_max], as CSV.
    Curves {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1.6)]
        t_max: f64,
        #[arg(long, default_value_t = 161)]
        samples: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
}

fn settings(shared: &Shared) -> Result<Settings, CliError> {
    let tol = Tolerance::new(shared.tol_rank, Tolerance::default().match_tol)?;
    Ok(Settings {
        tol,
        grid_steps: shared.grid_steps,
        json: shared.json,
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Construct { params, out, shared } => {
            let p = commands::params(params.a, params.b)?;
            commands::construct(&p, &settings(&shared)?, out.as_deref())
        }
        Command::Verify { params, shared } => {
            let p = commands::params(params.a, params.b)?;
            commands::verify(&p, &settings(&shared)?)
        }
        Command::Path { params, t_max, samples, out, shared } => {
            let p = commands::params(params.a, params.b)?;
            commands::path(&p, &settings(&shared)?, t_max, samples, out.as_deref())
        }
        Command::Solve { d, e, state, shared } => {
            let input = match (d, e, state) {
                (Some(d), Some(e), None) => SolveInput::Subspaces { d, e },
                (None, None, Some(s)) => SolveInput::State(s),
                _ => return Err(CliError::Parameter("give either --d and --e, or --state".into())),
            };
            commands::solve(&input, &settings(&shared)?)
        }
        Command::Curves { params, t_max, samples, out, shared } => {
            let p = commands::params(params.a, params.b)?;
            commands::curves(&p, &settings(&shared)?, t_max, samples, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
