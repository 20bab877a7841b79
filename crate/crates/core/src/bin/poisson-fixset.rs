use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use poisson_fixset::cli::{
    cmd_action_check, cmd_fixed_set, cmd_jacobi, cmd_reduce, cmd_simplex, cmd_stratify, CliError, RunOptions,
    SimplexArgs,
};
use poisson_fixset::report::EXIT_INPUT;

/// Exact verification of Poisson structures and their reductions to
/// fixed-point sets. Exit status: 0 PASS, 1 FAIL, 2 input error,
/// 3 internal abort.
#[derive(Parser)]
#[command(name = "poisson-fixset", version)]
struct Args {
    /// Seed for sampled points, random functions and random matrices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample points for the pointwise Dirac condition (default 100).
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Extension-independence trials and random function pairs (default 20).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Print only the key/value block.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity of a bracket table.
    Jacobi { file: PathBuf },
    /// Check that a group action preserves the bracket.
    ActionCheck { file: PathBuf },
    /// Compute the fixed subspace, its complement and the Dirac conditions.
    FixedSet { file: PathBuf },
    /// Compute the induced structure on the fixed-point set.
    Reduce { file: PathBuf },
    /// Derive and verify the bracket on the simplex.
    Simplex(SimplexCmd),
    /// List the faces of the simplex with their induced brackets.
    Stratify(SimplexCmd),
}

#[derive(clap::Args)]
struct SimplexCmd {
    /// Problem file whose [params] give n, A or symbolic.
    file: Option<PathBuf>,
    /// Simplex dimension (default 1 symbolic, 2 otherwise).
    #[arg(long)]
    n: Option<usize>,
    /// Use formal entries a_ij (n <= 2).
    #[arg(long)]
    symbolic: bool,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(args: &Args) -> Result<poisson_fixset::report::Report, CliError> {
    let opts = RunOptions {
        seed: args.seed,
        points: args.points,
        trials: args.trials,
    };
    match &args.command {
        Command::Jacobi { file } => cmd_jacobi(&read(file)?),
        Command::ActionCheck { file } => cmd_action_check(&read(file)?),
        Command::FixedSet { file } => cmd_fixed_set(&read(file)?, &opts),
        Command::Reduce { file } => cmd_reduce(&read(file)?, &opts),
        Command::Simplex(s) | Command::Stratify(s) => {
            let text = s.file.as_ref().map(read).transpose()?;
            let sargs = SimplexArgs {
                n: s.n,
                symbolic: s.symbolic,
            };
            if matches!(args.command, Command::Simplex(_)) {
                cmd_simplex(text.as_deref(), &sargs, &opts)
            } else {
                cmd_stratify(text.as_deref(), &sargs, &opts)
            }
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&args);
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    match result {
        Ok(report) => {
            print!("{}", report.render(args.machine));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
