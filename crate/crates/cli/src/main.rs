use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use csl_cli::{run_script, RunOptions};

/// Certified curve selection over truncated power series.
#[derive(Debug, Parser)]
#[command(name = "csl", version)]
struct Cli {
    /// Script to run; standard input when absent.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Where to write the certificate or report; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Max-norm bound for the integer searches in regularization and line selection.
    #[arg(long, default_value_t = RunOptions::default().search_bound)]
    search_bound: u64,
    /// Budget of projection steps.
    #[arg(long, default_value_t = RunOptions::default().max_steps)]
    max_steps: usize,
    /// Suppress diagnostics on success.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match &cli.script {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error [cli-io]: cannot read script: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run_script(&text, RunOptions { search_bound: cli.search_bound, max_steps: cli.max_steps });
    if !outcome.output.is_empty() {
        let written = match &cli.out {
            Some(p) => std::fs::write(p, &outcome.output),
            None => std::io::stdout().write_all(outcome.output.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("error [cli-io]: cannot write output: {e}");
            return ExitCode::from(2);
        }
    }
    if !cli.quiet || outcome.exit_code != 0 {
        eprint!("{}", outcome.notes);
    }
    ExitCode::from(outcome.exit_code as u8)
}
