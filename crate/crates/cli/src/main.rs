//! `trigsolve` — CLI for the coupled trigonometric system solver.

use clap::{Parser, Subcommand};

use trigsolve_cli::commands;
use trigsolve_cli::{BatchArgs, IkArgs, OracleArgs, RandomArgs, SolveArgs};

#[derive(Parser)]
#[command(
    name = "trigsolve",
    version,
    about = "Find all (θ1, θ2) with A·[cosθ1,sinθ1]ᵀ + B·[cosθ2,sinθ2]ᵀ = C",
    after_help = "Exit codes: 0 solved (finite or family), 2 input error, 3 no solutions."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single system given inline or as a JSON document
    Solve(SolveArgs),
    /// Solve one JSON system per input line, order-preserving
    Batch(BatchArgs),
    /// Seeded self-test on randomly generated systems with planted truth
    Random(RandomArgs),
    /// Cross-check solver output against the brute-force grid oracle
    Oracle(OracleArgs),
    /// Two-link planar inverse kinematics demo
    Ik(IkArgs),
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Solve(args) => commands::solve_cmd(args),
        Command::Batch(args) => commands::batch_cmd(args),
        Command::Random(args) => commands::random_cmd(args),
        Command::Oracle(args) => commands::oracle_cmd(args),
        Command::Ik(args) => commands::ik_cmd(args),
    };
    std::process::exit(code);
}
