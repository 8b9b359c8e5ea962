use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nanopair::scan::{emit_csv, report_extrema, resolve_rates, run_sweep, SweepConfig};

/// Steady-state sweeps of two emitters coupled through a nanophotonic environment.
#[derive(Parser)]
#[command(name = "nanopair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coupling rates named by a config as key = value lines.
    Rates(Common),
    /// Run the sweep and write the grid as CSV.
    Sweep(Common),
    /// Run the sweep and print its extrema as key = value lines.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Sweep configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the sweep; all cores when omitted.
    #[arg(long)]
    threads: Option<usize>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (Command::Rates(args) | Command::Sweep(args) | Command::Report(args)) = &cli.command;
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("cannot start the thread pool")?;
    }
    let config = SweepConfig::from_file(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let mut out = output(&args.out)?;
    match &cli.command {
        Command::Rates(_) => out.write_all(resolve_rates(&config)?.to_key_value().as_bytes())?,
        Command::Sweep(_) => {
            let grid = run_sweep(&config)?;
            emit_csv(&grid, &mut out)?;
            let failed = grid.failed_points();
            if failed > 0 {
                eprintln!("warning: {failed} of {} points did not converge", grid.records.len());
            }
        }
        Command::Report(_) => {
            let grid = run_sweep(&config)?;
            out.write_all(report_extrema(&grid)?.to_key_value().as_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}
