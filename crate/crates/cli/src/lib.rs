//! Command-line front end for the slope-indexed trace analyses: parse a
//! representation from a JSON file or an inline trace triple, dispatch one
//! analysis, and emit a CSV table, a JSON report, or a PGM raster.
//!
//! Every command is deterministic for fixed inputs: tables are assembled in
//! a fixed traversal order, floats are printed in shortest round-trip form,
//! JSON keys are sorted, and the raster scan merges its parallel rows by
//! row index.  Exit codes: 0 on success, 1 on usage errors (bad flags,
//! unreadable input), 2 on numerical or degenerate errors (e.g. a reducible
//! representation where irreducibility is required).

pub mod scan;

use clap::{Args, Parser, Subcommand, ValueEnum};
use farey_bq_core::analysis::{bi_scan, bq_decide, ps_margin, theta_scan};
use farey_bq_core::farey::{christoffel, fibonacci, level_vertices, palindrome_rep, tricolor};
use farey_bq_core::geometry::{
    classify, representation_from_json, representation_from_traces, H3Point, Representation,
};
use farey_bq_core::Error as CoreError;
use num_complex::Complex64;
use scan::{ScanGrid, ScanJob};
use serde_json::json;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

// ---------------------------------------------------------------------------
// Errors and exit codes.
// ---------------------------------------------------------------------------

/// A command failure, split by exit code: usage errors (1) cover flag and
/// input-file problems; numerical errors (2) cover degenerate computations.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            // Malformed representation input is the caller's mistake; every
            // other core failure is a property of the numbers.
            CoreError::BadRepInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

// ---------------------------------------------------------------------------
// Argument grammar.
// ---------------------------------------------------------------------------

/// Output format of a command.  Each command supports a subset; asking for
/// an unsupported pairing is a usage error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pgm,
}

/// The representation source: exactly one of a JSON file or an inline trace
/// triple.
#[derive(Args, Clone, Debug, Default)]
pub struct RepArgs {
    /// JSON file with {"matrices": {"a": [...], "b": [...]}} or
    /// {"traces": {"x": ..., "y": ..., "z": ...}}
    #[arg(long, value_name = "FILE", conflicts_with = "traces")]
    pub rep: Option<PathBuf>,
    /// Inline trace triple x_re,x_im,y_re,y_im,z_re,z_im
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub traces: Option<String>,
}

impl RepArgs {
    /// Loads the representation, or reports which source is missing.
    fn load(&self) -> Result<Representation> {
        match (&self.rep, &self.traces) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read {}: {e}", path.display()))
                })?;
                Ok(representation_from_json(&text)?)
            }
            (None, Some(list)) => {
                let v = parse_number_list(list, "--traces")?;
                let (x, y, z) = traces_from_values(&v)?;
                Ok(representation_from_traces(x, y, z)?)
            }
            (None, None) => Err(CliError::Usage(
                "a representation is required: give --rep FILE or --traces LIST".into(),
            )),
            // clap's conflicts_with already rejects both; unreachable here.
            (Some(_), Some(_)) => unreachable!("clap rejects --rep with --traces"),
        }
    }

    /// Loads only the generator trace pair (x, y), for the raster scan
    /// where z ranges over the grid.  Inline traces may give just the two
    /// fixed coordinates (4 numbers) or a full triple whose z is unused.
    fn load_xy(&self) -> Result<(Complex64, Complex64)> {
        match (&self.rep, &self.traces) {
            (None, Some(list)) => {
                let v = parse_number_list(list, "--traces")?;
                match v.len() {
                    4 => Ok((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))),
                    6 => Ok((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))),
                    n => Err(CliError::Usage(format!(
                        "--traces for scan takes 4 numbers (x, y) or 6 (x, y, z; z unused), got {n}"
                    ))),
                }
            }
            _ => {
                let rep = self.load()?;
                let (x, y, _) = rep.trace_triple();
                Ok((x, y))
            }
        }
    }
}

/// Splits a comma-separated list of floats, rejecting anything else.
fn parse_number_list(text: &str, flag: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{flag}: `{s}` is not a number")))
        })
        .collect()
}

/// Packs six reals into the trace triple (x, y, z).
fn traces_from_values(v: &[f64]) -> Result<(Complex64, Complex64, Complex64)> {
    if v.len() != 6 {
        return Err(CliError::Usage(format!(
            "--traces takes 6 numbers x_re,x_im,y_re,y_im,z_re,z_im, got {}",
            v.len()
        )));
    }
    Ok((
        Complex64::new(v[0], v[1]),
        Complex64::new(v[2], v[3]),
        Complex64::new(v[4], v[5]),
    ))
}

#[derive(Parser, Debug)]
#[command(
    name = "farey-bq",
    version,
    about = "Slope-indexed trace analysis of rank-2 representations into SL(2, C)",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report the trace triple, commutator trace, and generator classes
    Info {
        #[command(flatten)]
        rep: RepArgs,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate primitive classes by slope: words, colors, lengths
    Words {
        /// Deepest tree level to include
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_level: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Decide the trace-growth conditions by certified tree search
    Bq {
        #[command(flatten)]
        rep: RepArgs,
        /// Deepest tree level to search before giving up
        #[arg(long, value_name = "N", default_value_t = 12)]
        depth: u32,
        /// Extra slack required of escaping traces (|tr| > 2 + margin)
        #[arg(long, value_name = "F", default_value_t = 0.0)]
        margin: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Scan the worst axis angle and separation certificate per level
    Theta {
        #[command(flatten)]
        rep: RepArgs,
        /// Deepest tree level to scan
        #[arg(long, value_name = "N", default_value_t = 6)]
        max_level: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Estimate the orbit-map margin over primitive axis paths
    Ps {
        #[command(flatten)]
        rep: RepArgs,
        /// Deepest tree level whose classes are sampled
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_level: u32,
        /// Powers of each primitive examined on both sides (path window)
        #[arg(long, value_name = "N", default_value_t = 3)]
        depth: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Collect palindromic axis feet on the three junction lines
    Bi {
        #[command(flatten)]
        rep: RepArgs,
        /// Deepest tree level whose palindromic classes are collected
        #[arg(long, value_name = "N", default_value_t = 6)]
        max_level: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Raster a rectangle of product traces z, deciding each pixel
    Scan {
        #[command(flatten)]
        rep: RepArgs,
        /// Real range of z as MIN,MAX
        #[arg(long, value_name = "MIN,MAX", allow_hyphen_values = true)]
        re_range: String,
        /// Imaginary range of z as MIN,MAX
        #[arg(long, value_name = "MIN,MAX", allow_hyphen_values = true)]
        im_range: String,
        /// Grid resolution as WIDTH,HEIGHT (columns along re, rows along im)
        #[arg(long, value_name = "W,H", default_value = "64,64")]
        res: String,
        /// Deepest tree level searched per pixel (at most 16)
        #[arg(long, value_name = "N", default_value_t = 8)]
        depth: u32,
        /// Extra slack required of escaping traces (|tr| > 2 + margin)
        #[arg(long, value_name = "F", default_value_t = 0.0)]
        margin: f64,
        /// Output file; `pgm` format requires it (the CSV twin lands next
        /// to it with extension .csv)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

// ---------------------------------------------------------------------------
// Entry points.
// ---------------------------------------------------------------------------

/// Parses `argv` and runs the command, writing results to `stdout` and
/// error messages to `stderr`.  Returns the process exit code.
pub fn run_from<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Requested help/version text goes to stdout with success; real
            // parse errors are usage errors.
            return if e.use_stderr() {
                let _ = writeln!(stderr, "{e}");
                1
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "farey-bq: {e}");
            e.exit_code()
        }
    }
}

/// Writes `bytes` to `out`, or to the provided stdout when no path is set.
fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_file(path, bytes),
        None => stdout
            .write_all(bytes)
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Rejects output formats a command does not produce.
fn require_format(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{command} does not produce {format:?} output"
        )))
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Info { rep, out, format } => {
            require_format(format, &[Format::Json], "info")?;
            let rep = rep.load()?;
            let text = info_json(&rep);
            emit(&out, stdout, text.as_bytes())
        }
        Command::Words { max_level, out, format } => {
            require_format(format, &[Format::Csv], "words")?;
            let text = words_csv(max_level);
            emit(&out, stdout, text.as_bytes())
        }
        Command::Bq { rep, depth, margin, out, format } => {
            require_format(format, &[Format::Json], "bq")?;
            let rep = rep.load()?;
            let verdict = bq_decide(&rep, depth, margin);
            let text = pretty(&verdict.to_json());
            emit(&out, stdout, text.as_bytes())
        }
        Command::Theta { rep, max_level, out, format } => {
            require_format(format, &[Format::Csv, Format::Json], "theta")?;
            let rep = rep.load()?;
            let scan = theta_scan(&rep, max_level);
            let bytes = match format {
                Format::Csv => theta_csv(&scan).into_bytes(),
                _ => pretty(&theta_json(&scan)).into_bytes(),
            };
            emit(&out, stdout, &bytes)
        }
        Command::Ps { rep, max_level, depth, out, format } => {
            require_format(format, &[Format::Json], "ps")?;
            let rep = rep.load()?;
            let est = ps_margin(&rep, H3Point::base(), max_level, depth)?;
            let text = pretty(&est.to_json());
            emit(&out, stdout, text.as_bytes())
        }
        Command::Bi { rep, max_level, out, format } => {
            require_format(format, &[Format::Json], "bi")?;
            let rep = rep.load()?;
            let report = bi_scan(&rep, max_level)?;
            let text = pretty(&report.to_json());
            emit(&out, stdout, text.as_bytes())
        }
        Command::Scan { rep, re_range, im_range, res, depth, margin, out, format } => {
            require_format(format, &[Format::Csv, Format::Pgm], "scan")?;
            let (x, y) = rep.load_xy()?;
            let grid = parse_grid(&re_range, &im_range, &res)?;
            let job = ScanJob { x, y, grid, depth, margin };
            let result = scan::scan_slice(&job, thread_cap()?)?;
            match format {
                Format::Pgm => {
                    // The raster is unreadable interleaved with terminal
                    // noise, and its CSV twin needs a sibling path.
                    let path = out.ok_or_else(|| {
                        CliError::Usage("--format pgm requires --out PATH".into())
                    })?;
                    write_file(&path, &result.to_pgm())?;
                    write_file(&path.with_extension("csv"), result.to_csv().as_bytes())
                }
                _ => emit(&out, stdout, result.to_csv().as_bytes()),
            }
        }
    }
}

/// Parses the scan rectangle and resolution, enforcing the raster limits
/// (at most 4096 pixels per side, depth is checked by the scan itself).
fn parse_grid(re_range: &str, im_range: &str, res: &str) -> Result<ScanGrid> {
    let parse_pair = |text: &str, flag: &str| -> Result<(f64, f64)> {
        let v = parse_number_list(text, flag)?;
        if v.len() != 2 {
            return Err(CliError::Usage(format!("{flag} takes MIN,MAX, got {} values", v.len())));
        }
        Ok((v[0], v[1]))
    };
    let (re_min, re_max) = parse_pair(re_range, "--re-range")?;
    let (im_min, im_max) = parse_pair(im_range, "--im-range")?;
    let dims = parse_number_list(res, "--res")?;
    if dims.len() != 2 || dims.iter().any(|d| d.fract() != 0.0 || *d < 1.0) {
        return Err(CliError::Usage("--res takes two positive integers W,H".into()));
    }
    ScanGrid::new(re_min, re_max, im_min, im_max, dims[0] as usize, dims[1] as usize)
}

/// Reads the FAREY_BQ_THREADS cap; unset means the library default.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("FAREY_BQ_THREADS") {
        Ok(text) => {
            let n: usize = text.parse().map_err(|_| {
                CliError::Usage(format!("FAREY_BQ_THREADS: `{text}` is not a thread count"))
            })?;
            if n == 0 {
                return Err(CliError::Usage("FAREY_BQ_THREADS must be at least 1".into()));
            }
            Ok(Some(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("FAREY_BQ_THREADS: {e}"))),
    }
}

// ---------------------------------------------------------------------------
// Emitters.  CSV uses '.' decimals, '\n' endings, and a header row; floats
// print in shortest round-trip form, so equal inputs give equal bytes.
// ---------------------------------------------------------------------------

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn info_json(rep: &Representation) -> String {
    let (x, y, z) = rep.trace_triple();
    let kappa = rep.kappa();
    let complex = |c: Complex64| json!([c.re, c.im]);
    pretty(&json!({
        "traces": {"x": complex(x), "y": complex(y), "z": complex(z)},
        "kappa": complex(kappa),
        "reducible": rep.is_reducible(),
        "classes": {
            "a": classify(&rep.gen_a()).to_string(),
            "b": classify(&rep.gen_b()).to_string(),
            "ab": classify(&(rep.gen_a() * rep.gen_b())).to_string(),
        },
    }))
}

/// The primitive-class table: one row per vertex of level ≤ `max_level`,
/// levels ascending, within a level the positive slopes descending followed
/// by the negative slopes descending.
pub fn words_csv(max_level: u32) -> String {
    let mut rows = level_vertices(max_level);
    rows.sort_by_key(|&(_, lv)| lv);
    let mut out = String::from("slope,level,color,fibonacci,christoffel,palindrome\n");
    for (slope, lv) in rows {
        let line = format!(
            "{},{},{},{},{},{}\n",
            slope,
            lv,
            tricolor(slope),
            fibonacci(slope),
            christoffel(slope),
            palindrome_rep(slope),
        );
        out.push_str(&line);
    }
    out
}

/// One row per scanned level: worst angle and certificate status.
pub fn theta_csv(scan: &farey_bq_core::analysis::ThetaScan) -> String {
    let mut out = String::from("level,n_edges,n_errors,max_theta,all_separated\n");
    for row in &scan.rows {
        let theta = row.max_theta.map(|t| t.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.level, row.n_edges, row.n_errors, theta, row.all_separated
        ));
    }
    out
}

fn theta_json(scan: &farey_bq_core::analysis::ThetaScan) -> serde_json::Value {
    json!({
        "rows": scan
            .rows
            .iter()
            .map(|row| {
                json!({
                    "level": row.level,
                    "n_edges": row.n_edges,
                    "n_errors": row.n_errors,
                    "max_theta": row.max_theta,
                    "all_separated": row.all_separated,
                })
            })
            .collect::<Vec<_>>(),
        "separated_from": scan.separated_from(),
    })
}

// ---------------------------------------------------------------------------
// Tests.
// ---------------------------------------------------------------------------
