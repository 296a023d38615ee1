//! `trispin` CLI: XXZ λ sweeps, one-shot classification of a supplied
//! three-qubit state, invariant-cone slices, and Dicke concurrence values.
//!
//! Exit codes: 0 success, 1 error, 2 genuine tripartite entanglement
//! detected (classify only, for scripting).

mod classify;
mod config;
mod matrix_io;
mod slice;
mod sweep;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use trispin::{dicke_concurrence, dicke_pair_rdm, DickeSpec};

/// Thread-count override for the sweep worker pool.
const THREADS_ENV: &str = "TRISPIN_THREADS";

#[derive(Parser)]
#[command(
    name = "trispin",
    version,
    about = "Tripartite entanglement witnesses for spin-1/2 chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a λ sweep from a TOML config and write a CSV of records.
    Sweep {
        /// Path to the sweep configuration file.
        #[arg(long)]
        config: PathBuf,
    },
    /// Classify an 8x8 density matrix stored as plain text.
    Classify {
        /// Matrix file: 8 rows of 8 comma-separated complex entries "a+bi".
        matrix_file: PathBuf,
    },
    /// Classify a horizontal cut of the invariant cone into a CSV grid.
    Slice {
        /// Height of the cut (the state coordinate r_0), in (0, 1).
        #[arg(long)]
        r0: f64,
        /// Grid points per axis (max 2048).
        #[arg(long)]
        resolution: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the closed-form Dicke-multiplet concurrence and pair reduction.
    Dicke {
        /// Total number of spins.
        #[arg(long = "N")]
        n: usize,
        /// Number of up spins.
        #[arg(long)]
        k: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            std::process::exit(0);
        }
        Err(e) => {
            let _ = e.print();
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            // Quiet exit when a downstream pipe (e.g. `head`) closed early.
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            {
                std::process::exit(0);
            }
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    init_thread_pool()?;
    match cli.command {
        Command::Sweep { config } => {
            let cfg = config::load(&config)?;
            for notice in &cfg.notices {
                eprintln!("notice: {notice}");
            }
            let records = sweep::run_sweep(&cfg)?;
            sweep::write_csv_file(&records, &cfg.output)?;
            eprintln!(
                "wrote {} records ({} lambda points) to {}",
                records.len(),
                cfg.lambdas.len(),
                cfg.output.display()
            );
            Ok(0)
        }
        Command::Classify { matrix_file } => classify::classify_file(&matrix_file),
        Command::Slice { r0, resolution, output } => {
            match output {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)
                        .with_context(|| format!("cannot create {}", path.display()))?;
                    slice::run_slice(r0, resolution, &mut file)?;
                }
                None => slice::run_slice(r0, resolution, &mut std::io::stdout().lock())?,
            }
            Ok(0)
        }
        Command::Dicke { n, k } => {
            let spec = DickeSpec::new(n, k)?;
            let concurrence = dicke_concurrence(n, spec.jz())?;
            let rdm = dicke_pair_rdm(n, k)?;
            println!("N = {n}  k = {k}  Jz = {}", spec.jz());
            println!("pair concurrence = {concurrence}");
            let m = rdm.matrix();
            println!("pair reduction elements:");
            println!("  rho_00,00 = {}", m[(0, 0)].re);
            println!("  rho_01,01 = {} (= rho_01,10 = rho_10,01 = rho_10,10)", m[(1, 1)].re);
            println!("  rho_11,11 = {}", m[(3, 3)].re);
            Ok(0)
        }
    }
}

fn init_thread_pool() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .parse()
            .with_context(|| format!("{THREADS_ENV} must be a positive integer, got '{value}'"))?;
        if threads == 0 {
            anyhow::bail!("{THREADS_ENV} must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("thread pool already initialized")?;
    }
    Ok(())
}
