//! `ymqm`: command-line front end to the semiclassical pipeline.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or regime
//! violation, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Format, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ymqm", version, about = "Semiclassical partition function of x²y² quantum mechanics")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Config file: `key = value` lines or a JSON object. Flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub g: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub t: Option<f64>,
    #[arg(long = "Q", global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significant digits for high-precision constants (at least 30).
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report file; for `expand`, the fixture root directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the WK recursion and write W_k fixtures.
    Expand {
        /// quartic-xy or linear
        #[arg(long)]
        potential: Option<String>,
    },
    /// Exact square + channel sums order by order.
    CancelCheck {
        /// adiabatic or free
        #[arg(long)]
        model: Option<String>,
        /// Allow order 10; never affects the exit code.
        #[arg(long)]
        exploratory: bool,
    },
    /// Z(t) in K units and absolute units.
    Z {
        /// tf, leading, with-asymptotic, spectral or compare
        #[arg(long)]
        mode: Option<String>,
        /// Grid basis `spacing:extent:vcut`; give two for the convergence gate.
        #[arg(long = "grid")]
        grids: Vec<String>,
        /// Relative agreement required between the two bases.
        #[arg(long)]
        gate: Option<f64>,
        /// Relative tolerance for compare.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Matrix memory budget in MiB.
        #[arg(long)]
        budget_mib: Option<usize>,
    },
    /// I_mn closed form, corrected form and quadrature side by side.
    Imn {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Monte-Carlo samples per entry.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Regularized classical phase volume under repeated doubling of L.
    PhaseVolume {
        #[arg(long = "E")]
        e: Option<f64>,
        #[arg(long = "L")]
        l: Option<f64>,
        #[arg(long)]
        doublings: Option<u32>,
        #[arg(long)]
        samples: Option<u64>,
    },
}

/// Defaults, then the config file, then flags.
pub fn resolve_config(common: &CommonArgs) -> Result<RunConfig, ymqm_core::Error> {
    let mut c = RunConfig::default();
    if let Some(path) = &common.config {
        c.apply_file(path)?;
    }
    if let Some(v) = common.g {
        c.g = v;
    }
    if let Some(v) = common.hbar {
        c.hbar = v;
    }
    if let Some(v) = common.t {
        c.t = v;
    }
    if let Some(v) = common.q {
        c.q = v;
    }
    if let Some(v) = common.kmax {
        c.kmax = v;
    }
    if let Some(v) = common.format {
        c.format = v;
    }
    if let Some(v) = common.precision {
        c.precision = v;
    }
    if let Some(v) = common.seed {
        c.seed = v;
    }
    if let Some(v) = &common.out {
        c.out = Some(v.clone());
    }
    c.validate()?;
    Ok(c)
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = resolve_config(&cli.common).and_then(|mut cfg| commands::dispatch(&cli.command, &mut cfg));
    match result {
        Ok(outcome) => {
            if let Err(e) = outcome.emit() {
                eprintln!("error: {e}");
                return e.exit_code();
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
