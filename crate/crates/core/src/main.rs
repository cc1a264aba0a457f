use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use polargerm::cli::{self, Overrides};

/// Run a polargerm job file and write its JSON report.
#[derive(Parser, Debug)]
#[command(name = "polargerm", version)]
struct Args {
    /// Job file (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Local monomial order: negdegrevlex or negdegrevlex-rev.
    #[arg(long)]
    order: Option<String>,
    /// Cap on critical pairs per standard-basis run (default 50000).
    #[arg(long)]
    max_pairs: Option<usize>,
    /// Cap on intermediate total degree (default 80).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Largest power tried in radical-membership probes (default 20).
    #[arg(long)]
    radical_bound: Option<u32>,
    /// Report destination; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let overrides = Overrides {
        order: args.order,
        max_pairs: args.max_pairs,
        max_degree: args.max_degree,
        radical_bound: args.radical_bound,
    };
    let report = match std::fs::read_to_string(&args.job) {
        Ok(src) => cli::run_job_str(&src, &overrides),
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.job.display());
            return ExitCode::from(2);
        }
    };
    let text = report.to_canonical_string();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
