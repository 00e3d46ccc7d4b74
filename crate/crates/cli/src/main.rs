//! `periodcong`: Hasse-Witt matrices, Dwork-type congruences and
//! A-hypergeometric period matrices from the command line.
//!
//! Exit status: 0 when the computation succeeds and every congruence
//! holds, 1 when a congruence fails, 2 on invalid input.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "periodcong",
    version,
    about = "Exact period matrices and their p-adic congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the matrices beta_m(mu) and gamma_m(mu)
    Hw(commands::HwArgs),
    /// Constant terms of the powers of g
    CtSeq(commands::CtSeqArgs),
    /// Verify a congruence
    #[command(subcommand)]
    Verify(commands::VerifyCommand),
    /// Unit root from truncation quotients at a lifted point
    UnitRoot(commands::UnitRootArgs),
    /// A-hypergeometric configurations
    #[command(subcommand)]
    Ahyp(commands::AhypCommand),
}

/// Result of a command in both renderings.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    /// False when a verified congruence fails.
    pub ok: bool,
}

fn emit(out: &Output, outcome: &Outcome) -> Result<(), String> {
    let body = match out.format {
        Format::Text => outcome.text.trim_end().to_string() + "\n",
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json") + "\n",
    };
    match &out.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match cli.command {
        Command::Hw(a) => (a.out.clone(), commands::hw(&a)),
        Command::CtSeq(a) => (a.out.clone(), commands::ct_seq(&a)),
        Command::Verify(v) => (v.output().clone(), commands::verify(&v)),
        Command::UnitRoot(a) => (a.out.clone(), commands::unit_root(&a)),
        Command::Ahyp(c) => (c.output().clone(), commands::ahyp(&c)),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&out, &outcome) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                if out.output.is_some() || out.format == Format::Json {
                    eprintln!("congruence fails");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
