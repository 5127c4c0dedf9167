//! `novelty` command line: `simulate`, `trace`, `fit`, `theory`, `rank`.
//!
//! Data goes to `--out` (or stdout), diagnostics to stderr. Exit codes:
//! 0 success, 1 I/O failure, 2 usage or format error, 3 insufficient data.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::estimator::{
    default_zipf_range, fit_mle_yule, fit_ols_loglog, fit_zipf, rank_table, Binning, NuImplied,
};
use crate::format::sig12;
use crate::histogram::VisitHistogram;
use crate::traces::{synthesize_trace, unique_visitors_from_reader, FormatSpec, TimeWindow};
use crate::urn::{run as run_simulation, SimConfig};
use crate::yule::{alpha_from_nu, NoveltyRate, PowerExponent, YuleDistribution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "novelty", version, about = "Urn model of site visits: simulate, reduce traces, fit exponents")]
pub struct Cli {
    /// Seed for every random draw (required by `simulate`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the urn process and write a histogram or a synthetic trace.
    Simulate {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = Emit::Histogram)]
        emit: Emit,
    },
    /// Reduce an access log to a unique-visitor histogram.
    Trace {
        /// Trace file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArgs,
        /// Half-open time window `start:end`; either side may be empty.
        #[arg(long)]
        window: Option<String>,
    },
    /// Fit the distribution exponent of a histogram.
    Fit {
        /// Histogram CSV; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Mle)]
        method: Method,
        #[arg(long, default_value_t = 1)]
        nmin: u64,
        #[arg(long, value_enum, default_value_t = BinningArg::Log)]
        binning: BinningArg,
    },
    /// Emit the theoretical `n,pmf,ccdf` curve.
    Theory {
        #[arg(long, group = "selector", required = true)]
        alpha: Option<f64>,
        #[arg(long, group = "selector", required = true)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
    },
    /// Rank sites by visitors and fit the Zipf exponent.
    Rank {
        /// Histogram CSV; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        rank_min: Option<u64>,
        #[arg(long)]
        rank_max: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Histogram,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Ols,
    Mle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BinningArg {
    Raw,
    Log,
}

#[derive(Debug, Args)]
pub struct FormatArgs {
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    #[arg(long, default_value_t = 0)]
    pub user_col: usize,
    #[arg(long, default_value_t = 1)]
    pub site_col: usize,
    #[arg(long, default_value_t = 2)]
    pub time_col: usize,
    /// Ignore timestamps entirely.
    #[arg(long)]
    pub no_time: bool,
    /// The site column holds URLs; group by host.
    #[arg(long)]
    pub url: bool,
}

impl FormatArgs {
    fn spec(&self) -> FormatSpec {
        FormatSpec {
            delimiter: self.delimiter,
            user_column: self.user_col,
            site_column: self.site_col,
            timestamp_column: (!self.no_time).then_some(self.time_col),
            site_is_url: self.url,
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::InsufficientData(_) | Error::BoundaryFit { .. } => EXIT_INSUFFICIENT,
            Error::Domain(_)
            | Error::Parse(_)
            | Error::FormatMismatch { .. }
            | Error::WindowInapplicable
            | Error::InconsistentExponent { .. } => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli, stdin, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let mut file_out;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => {
            file_out = BufWriter::new(File::create(path)?);
            &mut file_out
        }
        None => stdout,
    };

    match &cli.command {
        Command::Simulate { nu, steps, emit } => {
            let seed = cli
                .seed
                .ok_or_else(|| Failure::usage("simulate requires --seed"))?;
            let config = SimConfig::new(*nu, *steps, seed)?;
            match emit {
                Emit::Histogram => run_simulation(&config).write_csv(&mut *out)?,
                Emit::Trace => {
                    let summary = synthesize_trace(&config, &mut *out)?;
                    writeln!(stderr, "{summary}")?;
                }
            }
        }
        Command::Trace { input, format, window } => {
            let window = match window {
                Some(w) => w.parse::<TimeWindow>()?,
                None => TimeWindow::unbounded(),
            };
            let reader = open_input(input.as_ref(), stdin)?;
            let (hist, summary) = unique_visitors_from_reader(reader, &format.spec(), window)?;
            hist.write_csv(&mut *out)?;
            writeln!(stderr, "{summary}")?;
        }
        Command::Fit { input, method, nmin, binning } => {
            let hist = read_histogram(input.as_ref(), stdin)?;
            let fit = match method {
                Method::Ols => {
                    let binning = match binning {
                        BinningArg::Raw => Binning::Raw,
                        BinningArg::Log => Binning::Logarithmic,
                    };
                    fit_ols_loglog(&hist, *nmin, binning)?
                }
                Method::Mle => fit_mle_yule(&hist, *nmin)?,
            };
            writeln!(out, "{fit}")?;
            match fit.nu_implied {
                NuImplied::Rate(nu) => {
                    let bound = fit.nu_upper_bound().expect("rate present");
                    writeln!(out, "nu={} nu < {}", sig12(nu.value()), sig12(bound))?;
                }
                NuImplied::Inconsistent => writeln!(
                    stderr,
                    "warning: alpha = {} < 2 is inconsistent with the model (implies a negative novelty rate)",
                    sig12(fit.alpha)
                )?,
                NuImplied::NotApplicable => {}
            }
        }
        Command::Theory { alpha, nu, max_n } => {
            if *max_n == 0 {
                return Err(Failure::usage("--max-n must be >= 1"));
            }
            let dist = match (alpha, nu) {
                (Some(a), None) => YuleDistribution::new(PowerExponent::new(*a)?),
                (None, Some(v)) => {
                    let nu = NoveltyRate::new(*v)?;
                    let a = alpha_from_nu(nu);
                    writeln!(out, "nu={} alpha={}", sig12(nu.value()), sig12(a.value()))?;
                    YuleDistribution::new(a)
                }
                _ => return Err(Failure::usage("give exactly one of --alpha or --nu")),
            };
            dist.write_theory_table(*max_n, &mut *out)?;
        }
        Command::Rank { input, rank_min, rank_max } => {
            let hist = read_histogram(input.as_ref(), stdin)?;
            let table = rank_table(&hist);
            let (lo, hi) = default_zipf_range(table.len());
            let (lo, hi) = (rank_min.unwrap_or(lo), rank_max.unwrap_or(hi));
            if lo > hi && (rank_min.is_none() || rank_max.is_none()) {
                return Err(Failure {
                    code: EXIT_INSUFFICIENT,
                    message: format!("table of {} sites is too small for ranks {lo}..={hi}", table.len()),
                });
            }
            let fit = fit_zipf(&table, lo, hi)?;
            table.write_csv(&mut *out)?;
            writeln!(out, "{fit}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn open_input<'a>(path: Option<&PathBuf>, stdin: &'a mut dyn BufRead) -> Result<Box<dyn BufRead + 'a>, Failure> {
    match path {
        Some(p) => {
            let f = File::open(p).map_err(|e| Failure::usage(format!("cannot open {}: {e}", p.display())))?;
            Ok(Box::new(BufReader::new(f)))
        }
        None => Ok(Box::new(stdin)),
    }
}

fn read_histogram(path: Option<&PathBuf>, stdin: &mut dyn BufRead) -> Result<VisitHistogram, Failure> {
    let hist = VisitHistogram::read_csv(open_input(path, stdin)?)?;
    if hist.is_empty() {
        return Err(Failure {
            code: EXIT_INSUFFICIENT,
            message: "histogram has no rows".into(),
        });
    }
    Ok(hist)
}
