//! `zmzn`: counts, enumerates and draws subgroups and subrings of
//! `Z_m × Z_n`, and runs the library's verification suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 budget exceeded.

mod commands;
mod output;

use std::fmt;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zmzn::dirichlet::FitWeighting;
use zmzn::Error;

use commands::{Check, Filter, ShowArgs, Status};
use output::{Format, Output};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "zmzn", version, about = "Subgroups and subrings of Z_m x Z_n")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Worker threads for verify sweeps, series checks and summatory grids.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,

    /// Largest m*n accepted by verify.
    #[arg(
        long = "max-mn",
        global = true,
        env = "ZMZN_MAX_MN",
        default_value_t = 600
    )]
    mn_budget: u64,

    /// Largest series bound X accepted by series.
    #[arg(long, global = true, env = "ZMZN_MAX_BOUND", default_value_t = 256)]
    max_bound: u64,

    /// Largest x accepted by sum.
    #[arg(long, global = true, env = "ZMZN_MAX_X", default_value_t = 20_000)]
    max_x: u64,

    /// Largest number of subgroups enumerate will list.
    #[arg(
        long,
        global = true,
        env = "ZMZN_MAX_RECORDS",
        default_value_t = 100_000
    )]
    max_records: u64,

    /// Largest grid (m*n cells) show will draw.
    #[arg(long, global = true, env = "ZMZN_MAX_CELLS", default_value_t = 10_000)]
    max_cells: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count subgroups, subrings, unital subrings and ideals.
    Count { m: u64, n: u64 },
    /// List every subgroup as a tuple (a, b, c, d, ell) with its classification.
    Enumerate {
        m: u64,
        n: u64,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
    },
    /// Draw one subgroup as a character grid.
    Show {
        m: u64,
        n: u64,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        ell: u64,
        /// Draw with filled squares and middle dots.
        #[arg(long)]
        unicode: bool,
    },
    /// Check closed forms and the tuple parametrization against brute force
    /// for every ring with m*n <= MAX_MN.
    Verify {
        #[arg(value_name = "MAX_MN")]
        max_mn: u64,
    },
    /// Check the Dirichlet series coefficient identities up to X.
    Series {
        #[arg(value_name = "X")]
        bound: u64,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
    },
    /// Exact sums of the subring counts over 1 <= m, n <= x; with three or
    /// more ascending values, also fit the lower-order constants.
    Sum {
        #[arg(required = true, value_name = "X")]
        xs: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Weighting::Absolute)]
        weighting: Weighting,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Weighting {
    /// Ordinary least squares on the sums.
    Absolute,
    /// Least squares on sum / x^2, every x weighted equally.
    Normalized,
}

impl From<Weighting> for FitWeighting {
    fn from(w: Weighting) -> Self {
        match w {
            Weighting::Absolute => FitWeighting::Absolute,
            Weighting::Normalized => FitWeighting::Normalized,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "write failed: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cli.jobs)))?;
    let mut out = Output::new(cli.format, BufWriter::new(io::stdout()));
    let status = pool.install(|| match cli.command {
        Command::Count { m, n } => commands::count(&mut out, m, n),
        Command::Enumerate { m, n, filter } => {
            commands::enumerate(&mut out, m, n, filter, cli.max_records)
        }
        Command::Show {
            m,
            n,
            a,
            b,
            c,
            d,
            ell,
            unicode,
        } => commands::show(
            &mut out,
            ShowArgs {
                m,
                n,
                quintuple: [a, b, c, d, ell],
                unicode,
                max_cells: cli.max_cells,
            },
        ),
        Command::Verify { max_mn } => commands::verify(&mut out, max_mn, cli.mn_budget),
        Command::Series { bound, check } => commands::series(&mut out, bound, check, cli.max_bound),
        Command::Sum { xs, weighting } => commands::sum(&mut out, &xs, weighting.into(), cli.max_x),
    })?;
    out.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(EXIT_VERIFICATION),
        Err(e) => {
            eprintln!("zmzn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
