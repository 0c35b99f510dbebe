use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use modulus_cli::{run_source, Options};
use modulus_core::MonomialOrder;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

/// Checks the constructions described in a modulus script.
#[derive(Debug, Parser)]
#[command(name = "modulus", version)]
struct Args {
    /// Script to run.
    script: PathBuf,
    /// Monomial order for every ideal built from the script.
    #[arg(long, value_enum, default_value = "grevlex")]
    order: Order,
    /// Degree bound for the Macaulay-matrix membership cross-check.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let src = match std::fs::read_to_string(&args.script) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.script.display());
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        order: match args.order {
            Order::Lex => MonomialOrder::Lex,
            Order::Grevlex => MonomialOrder::GrevLex,
        },
        max_degree: args.max_degree,
    };
    let report = match run_source(&src, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}:{e}", args.script.display());
            return ExitCode::from(2);
        }
    };
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(e) = &report.error {
        eprintln!("{}:{e}", args.script.display());
    }
    ExitCode::from(report.exit_code() as u8)
}
