use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use wpp_mori::WeightTriple;
use wpp_mori_cli::scan::{default_results_path, run_scan, ScanConfig};
use wpp_mori_cli::{commands, exit_code, table};

#[derive(Parser)]
#[command(name = "wpp-mori", version, about = "Mori dream tests for blow-ups of weighted projective planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Triple {
    a: u64,
    b: u64,
    c: u64,
}

impl Triple {
    fn weights(&self) -> Result<WeightTriple> {
        Ok(WeightTriple::new(self.a, self.b, self.c)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a triple as K*, multiplicity-two or other.
    Classify {
        #[command(flatten)]
        w: Triple,
        #[arg(long)]
        json: bool,
    },
    /// Print and verify a Cox ring presentation, or the pair-search verdict for other triples.
    Coxring {
        #[command(flatten)]
        w: Triple,
        #[arg(long, default_value_t = 14)]
        mu_cap: u32,
        #[arg(long)]
        json: bool,
    },
    /// Search for an orthogonal pair.
    MdsTest {
        #[command(flatten)]
        w: Triple,
        #[arg(long, default_value_t = 14)]
        mu_cap: u32,
        #[arg(long)]
        json: bool,
    },
    /// Scan all pairwise coprime a < b < c <= c_max, appending results to a JSONL file.
    Scan {
        #[arg(long)]
        c_max: u64,
        #[arg(long, default_value_t = 1)]
        a_min: u64,
        #[arg(long, default_value_t = 14)]
        mu_cap: u32,
        /// Results file; defaults to scan.jsonl under $WPP_MORI_CACHE (or ./.wpp-mori).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Print inconclusive triples against the reference table.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify that a list of forms generates the Cox ring of a blow-up.
    VerifyGens {
        instance: PathBuf,
        /// Gröbner pair-reduction budget per computation.
        #[arg(long)]
        budget: Option<u64>,
        /// Maximum number of saturation elements to discover.
        #[arg(long, default_value_t = 32)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Verify a lattice reduction onto a weighted projective plane.
    M0n {
        reduction: PathBuf,
        /// Also list positive weight triples up to this bound.
        #[arg(long)]
        search: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify { w, json } => print!("{}", commands::classify(&w.weights()?, json)),
        Command::Coxring { w, mu_cap, json } => print!("{}", commands::coxring(&w.weights()?, mu_cap, json)?),
        Command::MdsTest { w, mu_cap, json } => print!("{}", commands::mds_test(&w.weights()?, mu_cap, json)),
        Command::Scan {
            c_max,
            a_min,
            mu_cap,
            out,
            workers,
            table: with_table,
            json,
        } => {
            let cfg = ScanConfig {
                a_min,
                c_max,
                mu_cap,
                workers,
                out: out.unwrap_or_else(default_results_path),
            };
            let outcome = run_scan(&cfg)?;
            eprintln!(
                "{}: computed {}, reused {}, rejected {}",
                cfg.out.display(),
                outcome.computed,
                outcome.reused,
                outcome.rejected
            );
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.summary_json(&cfg))?);
            } else {
                print!("{}", outcome.summary(&cfg));
            }
            if with_table {
                print!("{}", table::render(&outcome.inconclusive()));
            }
        }
        Command::VerifyGens {
            instance,
            budget,
            max_steps,
            out,
            json,
        } => {
            let (_, text) = commands::verify_gens(&read(&instance)?, budget, max_steps, json)?;
            match out {
                Some(p) => fs::write(&p, &text).with_context(|| format!("cannot write {}", p.display()))?,
                None => print!("{text}"),
            }
        }
        Command::M0n { reduction, search, json } => {
            let (_, text) = commands::m0n(&read(&reduction)?, search, json)?;
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
