use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use golod_forge::cli::{parse_job, run_job, RunOptions};
use golod_forge::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Resolutions, trimming complexes and Golod verdicts for ideals in a job file.
#[derive(Debug, Parser)]
#[command(name = "golod-forge", version)]
struct Args {
    /// Job file to run.
    jobfile: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest internal degree any strand computation may reach.
    #[arg(long)]
    strand_bound: Option<i64>,
    /// Seed for resampled cycle representatives.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(args: &Args) -> Result<String, Error> {
    let text = std::fs::read_to_string(&args.jobfile)
        .map_err(|e| Error::precondition(format!("cannot read {}: {e}", args.jobfile.display())))?;
    let spec = parse_job(&text)?;
    let out = run_job(&spec, &RunOptions { strand_bound: args.strand_bound, seed: args.seed })?;
    Ok(match args.format {
        Format::Text => out.text,
        Format::Structured => serde_json::to_string_pretty(&out.structured).expect("JSON values serialize") + "\n",
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var("GOLOD_FORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore failure: a pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&args) {
        Ok(report) => {
            let written = match &args.out {
                Some(p) => std::fs::write(p, report).map_err(|e| e.to_string()),
                None => {
                    print!("{report}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("golod-forge: cannot write report: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => {
            eprintln!("golod-forge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
