mod commands;
mod failure;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use cabcoh::valuation::{DEFAULT_CROSSCHECK_CAP, DEFAULT_EXACT_CAP};
use cabcoh::BigInt;
use clap::{Parser, Subcommand, ValueEnum};

use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "cabcoh", version, about = "Exact reduction of differential forms on C_ab curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized steps; recorded in table headers.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocusMode {
    /// Full family when the chain fits under the symbolic cap, otherwise long-chain.
    Auto,
    Full,
    /// Two-variable superelliptic subfamily.
    LongChain,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a curve spec and decide smoothness mod p.
    Check { curve: PathBuf },
    /// Reduce forms such as "3 1 dx; -1/2 0 2 dy" to basis coordinates.
    Reduce {
        curve: PathBuf,
        #[arg(long)]
        form: String,
        /// Emit and verify the exactness certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Valuation probes on y^a + x^b + alpha for d = 1..d_max.
    Probe {
        p: u64,
        a: u32,
        b: u32,
        #[arg(allow_negative_numbers = true)]
        alpha: BigInt,
        d_max: u32,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        exact_cap: u64,
        #[arg(long, default_value_t = DEFAULT_CROSSCHECK_CAP)]
        crosscheck_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Probes over a grid read from a JSON config.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        exact_cap: Option<u64>,
        #[arg(long)]
        crosscheck_cap: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Locus polynomial of the d-th chain coefficient over the generic family.
    Generic {
        a: u32,
        b: u32,
        p: u64,
        d: u32,
        /// Largest x-exponent reduced over the full family (default 2b + 4).
        #[arg(long)]
        symbolic_cap: Option<u32>,
        /// Largest x-exponent reduced in long-chain mode.
        #[arg(long, default_value_t = cabcoh::generic::DEFAULT_LOCUS_CAP)]
        chain_cap: u32,
        #[arg(long, value_enum, default_value_t = LocusMode::Auto)]
        mode: LocusMode,
    },
    /// Residues of a form on a punctured line.
    Genus0 { form: PathBuf },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Check { curve } => commands::check(&curve, cli.seed.unwrap_or(0), out),
        Command::Reduce { curve, form, certificate } => commands::reduce(&curve, &form, certificate, out),
        Command::Probe { p, a, b, alpha, d_max, exact_cap, crosscheck_cap, format } => {
            let cfg = table::SweepConfig {
                primes: vec![p],
                pairs: vec![(a, b)],
                alphas: vec![alpha],
                d_max,
                exact_cap,
                crosscheck_cap,
                brute_cap: None,
                seed: cli.seed.unwrap_or(0),
                format,
            };
            table::run(&cfg, out)
        }
        Command::Sweep { config, exact_cap, crosscheck_cap, format } => {
            let mut cfg = table::SweepConfig::load(&config)?;
            cfg.exact_cap = exact_cap.unwrap_or(cfg.exact_cap);
            cfg.crosscheck_cap = crosscheck_cap.unwrap_or(cfg.crosscheck_cap);
            cfg.format = format.unwrap_or(cfg.format);
            cfg.seed = cli.seed.unwrap_or(cfg.seed);
            table::run(&cfg, out)
        }
        Command::Generic { a, b, p, d, symbolic_cap, chain_cap, mode } => {
            commands::generic(a, b, p, d, symbolic_cap, chain_cap, mode, out)
        }
        Command::Genus0 { form } => commands::genus0(&form, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cabcoh: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
