use std::process::ExitCode;

use clap::{Parser, Subcommand};

use levmeas_cli::{json_document, run, Command, Config, FamilySpec};

/// Exact measures of ddd-sets over higher local fields.
#[derive(Parser)]
#[command(name = "levmeas", version)]
struct Cli {
    /// Residue characteristic.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Field dimension n.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// additive, gl:M or sl:M
    #[arg(long, default_value = "additive")]
    family: FamilySpec,
    /// Print matrix-family measures in the X grading.
    #[arg(long)]
    paper_scaling: bool,
    /// Emit a JSON document instead of text.
    #[arg(long)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact measure of a ddd-set.
    Measure { expr: String },
    /// Canonical form of a ddd-set, as an expression.
    Canon { expr: String },
    /// Level of a ddd-set.
    Level { expr: String },
    /// Uniform level, or a witness that there is none.
    UniformLevel { expr: String },
    /// Index of a distinguished set in a larger one.
    Index { inner: String, outer: String },
    /// Trichotomy of two distinguished sets, or the relation of two ddd-sets.
    Compare { first: String, second: String },
    /// Level classification.
    Classify { expr: String },
    /// Recompute the measure by enumeration and compare.
    OracleCheck { expr: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, inputs) = match cli.command {
        Cmd::Measure { expr } => (Command::Measure, vec![expr]),
        Cmd::Canon { expr } => (Command::Canon, vec![expr]),
        Cmd::Level { expr } => (Command::Level, vec![expr]),
        Cmd::UniformLevel { expr } => (Command::UniformLevel, vec![expr]),
        Cmd::Index { inner, outer } => (Command::Index, vec![inner, outer]),
        Cmd::Compare { first, second } => (Command::Compare, vec![first, second]),
        Cmd::Classify { expr } => (Command::Classify, vec![expr]),
        Cmd::OracleCheck { expr } => (Command::OracleCheck, vec![expr]),
    };
    let config = Config { p: cli.p, dim: cli.dim, family: cli.family, paper_scaling: cli.paper_scaling };
    match run(&config, command, &inputs) {
        Ok(out) => {
            if cli.json {
                println!("{}", json_document(&config, command, &inputs, &out));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
