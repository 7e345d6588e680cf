//! `csf`: analyse spiders and trees, run censuses, verify the acceptance
//! suite and check conjectures at small scale.

mod commands;
mod target;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use csf_core::criteria::BatteryMode;

#[derive(Debug, Parser)]
#[command(name = "csf", version, about = "Chromatic symmetric functions of spiders and trees")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "CSF_FORMAT")]
    pub format: Format,
    /// Expansion cache file; loaded at start and written back at the end.
    #[arg(long, global = true, env = "CSF_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, env = "CSF_WORKERS")]
    pub workers: Option<usize>,
    /// Largest tree expanded by the edge-subset oracle.
    #[arg(long, global = true, env = "CSF_ORACLE_BOUND")]
    pub oracle_bound: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    CriteriaOnly,
    WithExpansion,
    CriteriaThenExpansion,
}

impl From<Mode> for BatteryMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::CriteriaOnly => BatteryMode::CriteriaOnly,
            Mode::WithExpansion => BatteryMode::WithExpansion,
            Mode::CriteriaThenExpansion => BatteryMode::CriteriaThenExpansion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusKindArg {
    Spiders,
    Trees,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every test on one graph: `S[l1,l2,...]`, `P<n>` or a tree file.
    Analyze {
        target: String,
        #[arg(long, value_enum, default_value_t = Mode::CriteriaThenExpansion, env = "CSF_MODE")]
        mode: Mode,
        /// Also run the weak form of the first leg condition.
        #[arg(long)]
        weak_variety: bool,
    },
    /// Print the e-expansion, or one coefficient of it.
    Expand {
        target: String,
        /// Partition whose coefficient to print, e.g. `2,2`.
        #[arg(long, env = "CSF_COEFF")]
        coeff: Option<String>,
    },
    /// Sweep every spider or tree over a range of orders.
    Census {
        kind: CensusKindArg,
        /// Orders as `a..b`, `a..=b` (both inclusive) or a single order.
        range: Option<String>,
        /// Upper end of the range.
        #[arg(long, env = "CSF_MAX_N")]
        max_n: Option<u64>,
        /// Only spiders with exactly this many legs.
        #[arg(long, env = "CSF_LEGS")]
        legs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::CriteriaOnly, env = "CSF_MODE")]
        mode: Mode,
    },
    /// Run the acceptance suite.
    Verify,
    /// Check the open conjectures on small spiders.
    Conjectures {
        /// Largest m in the two spider families.
        #[arg(long, default_value_t = 2, env = "CSF_MAX_M")]
        max_m: u64,
        /// Largest spider order for leg merging and line graphs.
        #[arg(long, default_value_t = 12, env = "CSF_MAX_N")]
        max_n: u64,
    },
    /// Inspect or manage the cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Entry counts and validity.
    Info,
    /// Delete the cache file.
    Clear,
    /// Expand every spider up to the given order into the cache.
    Warm {
        #[arg(long, env = "CSF_MAX_N")]
        max_n: u64,
    },
}

fn main() -> ExitCode {
    // die quietly when the reader of stdout goes away, like other filters
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
