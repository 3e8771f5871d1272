//! `schur-rb`: rainbow numbers of x1 + x2 = x3 on grids and intervals.
//!
//! Exit codes: 0 success or match, 2 mismatch / falsification / bad
//! certificate, 3 budget ran out, 64 usage error, 1 anything else.

mod rb;
mod tools;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_rainbow::analysis::YMode;
use schur_rainbow::SearchBudget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Indeterminate,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Ok => 0,
            Status::Mismatch => 2,
            Status::Indeterminate => 3,
        })
    }
}

/// Bad invocation; exits with 64.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

#[derive(Parser, Debug)]
#[command(
    name = "schur-rb",
    version,
    about = "Rainbow numbers of x1 + x2 = x3 on [m]x[n] and [n]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Stop after this many search nodes in total.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Stop after this many seconds of wall time.
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl BudgetArgs {
    pub fn budget(&self) -> anyhow::Result<SearchBudget> {
        let threads = match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            t => t,
        };
        let max_time = match self.max_seconds {
            Some(s) if !(s.is_finite() && s >= 0.0) => {
                return Err(usage(format!("--max-seconds must be >= 0, got {s}")))
            }
            s => s.map(Duration::from_secs_f64),
        };
        Ok(SearchBudget {
            max_nodes: self.max_nodes,
            max_time,
            threads,
            ..SearchBudget::unlimited()
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct CacheArgs {
    /// JSON-lines certificate cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Accept cached exhaustion certificates without re-running the search.
    #[arg(long, requires = "cache")]
    trust_cache: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Regions {
    /// Corner blocks bounded by n in the column direction.
    NBound,
    /// Corner blocks bounded by m in both directions.
    MBound,
}

impl From<Regions> for YMode {
    fn from(r: Regions) -> Self {
        match r {
            Regions::NBound => YMode::NBound,
            Regions::MBound => YMode::MBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Lower,
    Valuation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute rb([m]x[n]) by search and compare with m+n+1.
    RbGrid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Directory for the certificate files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compute rb([n]) by search and compare with floor(log2 n)+2.
    RbInterval {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Find a rainbow-free exact coloring with the given number of colors.
    Witness {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        colors: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print the certificate JSON instead of the grid.
        #[arg(long)]
        json: bool,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and self-check a closed-form coloring.
    Construct {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Which::Lower)]
        which: Which,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a certificate file is canonical and that its claim holds.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the structure report of a coloring (certificate JSON or text).
    Analyze {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Regions::NBound)]
        regions: Regions,
    },
    /// Check one lemma on every rainbow-free exact coloring of a size.
    Lemma {
        #[arg(long)]
        name: String,
        #[arg(long, required_unless_present = "interval")]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Color count; all feasible counts when omitted.
        #[arg(long)]
        r: Option<usize>,
        /// Work on the interval [n] instead of a grid.
        #[arg(long, conflicts_with = "m")]
        interval: bool,
        #[arg(long, value_enum, default_value_t = Regions::NBound)]
        regions: Regions,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::RbGrid {
            m,
            n,
            budget,
            cache,
            json,
            out,
        } => rb::rb_grid(m, n, &budget, &cache, json, &out),
        Command::RbInterval {
            n,
            budget,
            cache,
            json,
            out,
        } => rb::rb_interval(n, &budget, &cache, json, &out),
        Command::Witness {
            m,
            n,
            colors,
            budget,
            json,
            out,
        } => tools::witness(m, n, colors, &budget, json, out.as_deref()),
        Command::Construct { m, n, which, json, out } => tools::construct(m, n, which, json, out.as_deref()),
        Command::Verify { file, budget } => tools::verify(&file, &budget),
        Command::Analyze { file, regions } => tools::analyze(&file, regions.into()),
        Command::Lemma {
            name,
            m,
            n,
            r,
            interval,
            regions,
            budget,
        } => tools::lemma(&name, m, n, r, interval, regions.into(), &budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(status) => status.into(),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(64)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
