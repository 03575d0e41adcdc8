//! The `ffhyper` command line: argument parsing, validation and output.

use crate::classnumbers::ClassNumberTable;
use crate::config::{RunConfig, Tolerances};
use crate::field::{FieldError, FieldTable, GaussSumTable};
use crate::hypergeom::{sweep, Family};
use crate::moments::{float17, ks_and_histogram, reports_to_json, MomentReport, Reference};
use crate::verify::{any_failed, run_suite, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ffhyper", version, about = "Finite-field hypergeometric values, moments and distributions")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    F21,
    F32,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::F21 => Family::F21,
            FamilyArg::F32 => Family::F32,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Largest accepted field size q.
    #[arg(long, default_value_t = crate::field::DEFAULT_FIELD_CAP)]
    pub field_cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Scaled values for every parameter, as CSV.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moment reports for m = 1..=m_max, as JSON.
    Moments {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of renormalized values against the limiting density, as CSV.
    Hist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 80)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification battery.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Class-number table `d,h,omega,H,Hstar` up to a bound, as CSV.
    Classes {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    BadArgs(String),
    #[error("{0}")]
    Cap(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadArgs(_) => EXIT_BAD_ARGS,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Io(_) => EXIT_BAD_ARGS,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        if e.is_cap_violation() {
            CliError::Cap(e.to_string())
        } else {
            CliError::BadArgs(e.to_string())
        }
    }
}

/// Largest table `moments` will build for the class-number side.
pub const CLASS_TABLE_CAP: u64 = 1 << 23;

impl Command {
    pub fn config(&self, threads: Option<usize>) -> RunConfig {
        let mut c = RunConfig { threads, ..RunConfig::default() };
        let set_field = |c: &mut RunConfig, f: &FieldArgs| {
            c.p = Some(f.p);
            c.r = f.r;
            c.family = Some(f.family.into());
            c.field_cap = f.field_cap;
        };
        match self {
            Command::Sweep { field, out } => {
                c.command = "sweep".into();
                set_field(&mut c, field);
                c.output = out.clone();
            }
            Command::Moments { field, m_max, out } => {
                c.command = "moments".into();
                set_field(&mut c, field);
                c.m_max = *m_max;
                c.output = out.clone();
            }
            Command::Hist { field, bins, out } => {
                c.command = "hist".into();
                set_field(&mut c, field);
                c.bins = *bins;
                c.output = out.clone();
            }
            Command::Verify { .. } => c.command = "verify".into(),
            Command::Classes { out, .. } => {
                c.command = "classes".into();
                c.output = out.clone();
            }
        }
        c
    }
}

fn writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn field(args: &FieldArgs) -> Result<FieldTable, CliError> {
    Ok(crate::field::build_field(args.p, args.r, args.field_cap)?)
}

pub fn write_sweep_csv<W: Write>(f: &FieldTable, family: Family, mut out: W) -> io::Result<()> {
    let values = sweep(f, &GaussSumTable::new(f), family);
    writeln!(out, "lambda_dlog,lambda_repr,scaled,residual")?;
    for v in &values {
        let dlog = f.dlog(v.lambda).map(|k| k.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{}", dlog, f.repr(v.lambda), v.scaled, float17(v.residual))?;
    }
    out.flush()
}

pub fn moment_reports(f: &FieldTable, family: Family, m_max: u32) -> Result<Vec<MomentReport>, CliError> {
    let q = f.q() as u64;
    let table = if family == Family::F21 {
        if 4 * q > CLASS_TABLE_CAP {
            return Err(CliError::Cap(format!("class table 4q = {} exceeds cap {CLASS_TABLE_CAP}", 4 * q)));
        }
        Some(ClassNumberTable::tabulate(4 * q))
    } else {
        None
    };
    let values = sweep(f, &GaussSumTable::new(f), family);
    (1..=m_max)
        .map(|m| {
            MomentReport::build(&values, family, f, table.as_ref(), m).map_err(|e| CliError::BadArgs(e.to_string()))
        })
        .collect()
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let tol = Tolerances::default();
    match &cli.command {
        Command::Sweep { field: fa, out } => {
            let f = field(fa)?;
            write_sweep_csv(&f, fa.family.into(), writer(out)?)?;
        }
        Command::Moments { field: fa, m_max, out } => {
            if *m_max == 0 {
                return Err(CliError::BadArgs("--m-max must be at least 1".into()));
            }
            let f = field(fa)?;
            let reports = moment_reports(&f, fa.family.into(), *m_max)?;
            let mut w = writer(out)?;
            writeln!(w, "{}", reports_to_json(&reports))?;
            w.flush()?;
        }
        Command::Hist { field: fa, bins, out } => {
            if *bins < 2 {
                return Err(CliError::BadArgs(format!("--bins must be at least 2, got {bins}")));
            }
            let f = field(fa)?;
            let family: Family = fa.family.into();
            let values = sweep(&f, &GaussSumTable::new(&f), family);
            let reference = Reference::new(family);
            let h = ks_and_histogram(&values, family, f.q() as u64, *bins, &reference)
                .map_err(|e| CliError::BadArgs(e.to_string()))?;
            h.write_csv(writer(out)?)?;
            eprintln!("ks={} threshold={}", float17(h.ks_statistic), tol.ks(family));
        }
        Command::Verify { suite } => {
            let checks = run_suite(*suite);
            let mut w = io::stdout().lock();
            for c in &checks {
                writeln!(w, "{c}")?;
            }
            return Ok(if any_failed(&checks) { EXIT_VERIFY_FAILED } else { EXIT_OK });
        }
        Command::Classes { bound, out } => {
            if *bound > CLASS_TABLE_CAP {
                return Err(CliError::Cap(format!("bound {bound} exceeds cap {CLASS_TABLE_CAP}")));
            }
            let mut w = writer(out)?;
            ClassNumberTable::tabulate(*bound).write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_BAD_ARGS;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
