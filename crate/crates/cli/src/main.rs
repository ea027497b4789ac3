use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Crate version plus the design-file schema version.
pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (design schema 1)");

/// Exit code for a failed `--check`.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit code for bad usage or a domain error.
pub const EXIT_USAGE: u8 = 2;
/// Exit code for an infeasible design.
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "cyclodecim", version = VERSION, about = "Multiplier-less decimation filters from cyclotomic polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C_q, its rational forms and realization costs.
    Poly {
        q: u32,
        /// Delay weight used to pick the cheapest realization.
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
    },
    /// Optimize a cascade for a decimation spec and write a design file.
    Design(DesignArgs),
    /// Write the magnitude response of a design as CSV.
    Response {
        #[arg(long)]
        design: PathBuf,
        /// Points over [0, 1/2].
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check the design against its mask (exit 1 on failure).
        #[arg(long)]
        check: bool,
    },
    /// Emit architecture descriptions as JSON.
    Synth {
        #[arg(long)]
        design: PathBuf,
        #[arg(long, value_enum, default_value_t = ArchChoice::All)]
        arch: ArchChoice,
        /// Input sample width in bits.
        #[arg(long, default_value_t = 1)]
        rin: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run architectures bit-exactly and compare their outputs.
    Simulate(SimulateArgs),
    /// List the CPs eligible for a decimation stage.
    Eligible {
        #[arg(long = "D")]
        decimation: u32,
        #[arg(long)]
        nu: u32,
        /// Share of a CP's zeros that must fall in folding bands.
        #[arg(long, default_value = "1/5")]
        threshold: String,
    },
    /// Print totient, Möbius or cost tables.
    #[command(group(ArgGroup::new("table").required(true).args(["totient", "mobius", "catalog"])))]
    Tables {
        #[arg(long)]
        totient: bool,
        #[arg(long)]
        mobius: bool,
        #[arg(long)]
        catalog: bool,
        /// Largest n listed (defaults: 69 for totient, 104 for Möbius).
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
    },
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// Decimation factor of the stage.
    #[arg(long = "D")]
    pub decimation: u32,
    /// Decimation left for later stages; the cutoff is 1/(2 D nu).
    #[arg(long)]
    pub nu: u32,
    /// Passband ripple budget, dB.
    #[arg(long = "Rp")]
    pub ripple_db: f64,
    /// Folding-band attenuation, dB.
    #[arg(long = "As")]
    pub attenuation_db: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Points per band for the attenuation table.
    #[arg(long, default_value_t = cyclodecim::spectrum::DEFAULT_GRID)]
    pub grid: usize,
    /// Design file to write (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArchChoice {
    Direct,
    Polyphase,
    Recursive,
    Cascade,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StimulusChoice {
    Impulse,
    Step,
    Prng,
    File,
    All,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub design: PathBuf,
    /// Architectures to run; the direct form always runs as the reference.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub arch: Vec<ArchChoice>,
    #[arg(long, value_enum, default_value_t = StimulusChoice::All)]
    pub stimulus: StimulusChoice,
    /// Samples per generated stimulus.
    #[arg(long, default_value_t = 10_000)]
    pub length: usize,
    /// Seed of the xorshift64 stimulus (decimal or 0x-prefixed hex).
    #[arg(long, default_value = "0xC0FFEE", value_parser = parse_u64)]
    pub seed: u64,
    /// Sample width of prng and file stimuli, bits.
    #[arg(long, default_value_t = 1)]
    pub rin: u32,
    /// Sample file (one integer per line) for `--stimulus file`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Exit 1 unless every architecture agrees.
    #[arg(long)]
    pub check: bool,
    /// Directory receiving one stream file per architecture and stimulus.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Full JSON report destination.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
