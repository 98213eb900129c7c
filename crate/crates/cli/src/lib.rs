//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skdist_core::estimation::{fit_mle, fit_mom};
use skdist_core::oracle::selfcheck;
use skdist_core::product_ratio::{self, verbatim, PairLaw};
use skdist_core::skew::{skew_cdf_many, skew_pdf, SkewParams};
use skdist_core::{SampleStream, SkdError, SkdParams};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const NUMERIC: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const SELFCHECK: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "skdist", version, about = "Symmetric and skew K-distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Density and distribution function at one point.
    Eval(EvalArgs),
    /// Density and distribution function on an evenly spaced grid.
    Tabulate(TabulateArgs),
    /// Seeded random variates.
    Sample(SampleArgs),
    /// Fit parameters to a sample read from a file.
    Fit(FitArgs),
    /// Laws of the product and ratio of two independent centred variables.
    Prodratio(ProdRatioArgs),
    /// Run the numerical self-check suite and print one JSON report per line.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    zeta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<SkdParams, CliError> {
        SkdParams::new(self.alpha, self.zeta, self.delta, self.gamma).map_err(CliError::usage)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct SelfcheckArgs {
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    hi: f64,
    /// Number of grid points, at least 2.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Skewness regulator; adds skewed density and distribution columns.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct TabulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    count: usize,
    /// Generator seed; 0 when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FitMethod {
    /// Method of moments.
    Mom,
    /// Maximum likelihood started from the method-of-moments estimate.
    Mle,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Plain text file with one sample per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FitMethod::Mle)]
    method: FitMethod,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProdRatioArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Single evaluation point; otherwise `--lo`, `--hi` and `--n` give a grid.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["lo", "hi", "n"])]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["hi", "n"])]
    lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["lo", "n"])]
    hi: Option<f64>,
    #[arg(long, requires_all = ["lo", "hi"])]
    n: Option<usize>,
    /// Use the closed forms as originally printed instead of the corrected ones.
    #[arg(long)]
    paper_verbatim: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(String),
    Io(io::Error),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn numeric(check: &str, e: SkdError) -> Self {
        CliError::Numeric(format!("{check}: {e}"))
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// A table of named numeric columns.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(w, "{}", self.header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let records: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.header
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), json_number(*v)))
                            .collect()
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *w, &records).map_err(io::Error::other)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// Seventeen significant digits, which round-trip every `f64`.
fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn grid(g: &GridArgs) -> Result<Vec<f64>, CliError> {
    if g.n < 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least 2, got {}",
            g.n
        )));
    }
    if !(g.lo.is_finite() && g.hi.is_finite() && g.lo < g.hi) {
        return Err(CliError::Usage(format!(
            "need finite --lo < --hi, got {} and {}",
            g.lo, g.hi
        )));
    }
    let step = (g.hi - g.lo) / (g.n - 1) as f64;
    Ok((0..g.n)
        .map(|i| {
            if i + 1 == g.n {
                g.hi
            } else {
                g.lo + step * i as f64
            }
        })
        .collect())
}

/// Density with an unbounded value at a singular centre shown as `inf`.
fn density_or_inf(r: Result<f64, SkdError>, check: &str) -> Result<f64, CliError> {
    match r {
        Ok(v) => Ok(v),
        Err(SkdError::Singularity { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(CliError::numeric(check, e)),
    }
}

fn skew_params(p: SkdParams, lambda: Option<f64>) -> Result<Option<SkewParams>, CliError> {
    lambda
        .map(|l| SkewParams::new(p, l).map_err(CliError::usage))
        .transpose()
}

fn distribution_table(
    p: &SkdParams,
    xs: &[f64],
    skew: Option<SkewParams>,
    strict: bool,
) -> Result<Table, CliError> {
    let mut header = vec!["x", "pdf", "cdf"];
    if skew.is_some() {
        header.extend(["skew_pdf", "skew_cdf"]);
    }
    let mut table = Table::new(header);
    let skew_cdfs = match &skew {
        Some(sp) => Some(skew_cdf_many(sp, xs).map_err(|e| CliError::numeric("skew_cdf", e))?),
        None => None,
    };
    for (i, &x) in xs.iter().enumerate() {
        let pdf = if strict {
            p.pdf(x).map_err(|e| CliError::numeric("pdf", e))?
        } else {
            density_or_inf(p.pdf(x), "pdf")?
        };
        let cdf = p
            .cdf_eval(x)
            .map_err(|e| CliError::numeric("cdf", e))?
            .value;
        let mut row = vec![x, pdf, cdf];
        if let (Some(sp), Some(cdfs)) = (&skew, &skew_cdfs) {
            let sp_pdf = if strict {
                skew_pdf(sp, x).map_err(|e| CliError::numeric("skew_pdf", e))?
            } else {
                density_or_inf(skew_pdf(sp, x), "skew_pdf")?
            };
            row.extend([sp_pdf, cdfs[i]]);
        }
        table.rows.push(row);
    }
    Ok(table)
}

fn with_output(
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            body(&mut buf)?;
            fs::write(p, buf)?;
        }
        None => body(out)?,
    }
    Ok(())
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.params()?;
    let sp = skew_params(p, a.lambda)?;
    let table = distribution_table(&p, &[a.x], sp, true)?;
    with_output(&a.out.output, out, |w| table.write(a.out.format, w))?;
    Ok(exit::OK)
}

fn cmd_tabulate(a: &TabulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.params()?;
    let sp = skew_params(p, a.lambda)?;
    let xs = grid(&a.grid)?;
    let table = distribution_table(&p, &xs, sp, false)?;
    with_output(&a.out.output, out, |w| table.write(a.out.format, w))?;
    Ok(exit::OK)
}

fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.params()?;
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mut stream = SampleStream::new(p, a.seed.unwrap_or(0));
    let values = match a.lambda {
        Some(l) => {
            skew_params(p, Some(l))?;
            stream
                .take_skew_samples(a.count, l)
                .map_err(|e| CliError::numeric("sample_skew", e))?
        }
        None => stream.take_samples(a.count),
    };
    let mut table = Table::new(vec!["x"]);
    table.rows = values.into_iter().map(|v| vec![v]).collect();
    with_output(&a.out.output, out, |w| table.write(a.out.format, w))?;
    Ok(exit::OK)
}

fn read_samples(path: &PathBuf) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

fn cmd_fit(a: &FitArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let xs = read_samples(&a.input)?;
    let mom = fit_mom(&xs).map_err(|e| CliError::numeric("fit_mom", e))?;
    let result = match a.method {
        FitMethod::Mom => mom,
        FitMethod::Mle => fit_mle(&xs, &mom.params).map_err(|e| CliError::numeric("fit_mle", e))?,
    };
    with_output(&a.output, out, |w| write_json_line(w, &result))?;
    Ok(exit::OK)
}

fn write_json_line(w: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value).map_err(io::Error::other)?;
    writeln!(w)
}

fn cmd_prodratio(a: &ProdRatioArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.params.params()?;
    let law = PairLaw::from_params(&p).map_err(CliError::usage)?;
    let zs = match (a.x, a.lo, a.hi, a.n) {
        (Some(x), ..) => vec![x],
        (None, Some(lo), Some(hi), Some(n)) => grid(&GridArgs { lo, hi, n })?,
        _ => {
            return Err(CliError::Usage(
                "prodratio needs --x or all of --lo, --hi, --n".into(),
            ))
        }
    };
    let mut table = Table::new(vec![
        "z",
        "product_pdf",
        "product_cdf",
        "ratio_pdf",
        "ratio_cdf",
    ]);
    for &z in &zs {
        let row = if a.paper_verbatim {
            vec![
                z,
                density_or_inf(verbatim::product_pdf(&law, z), "product_pdf")?,
                verbatim::product_cdf(&law, z).map_err(|e| CliError::numeric("product_cdf", e))?,
                density_or_inf(verbatim::ratio_pdf(&law, z), "ratio_pdf")?,
                verbatim::ratio_cdf(&law, z).map_err(|e| CliError::numeric("ratio_cdf", e))?,
            ]
        } else {
            vec![
                z,
                density_or_inf(product_ratio::product_pdf(&law, z), "product_pdf")?,
                product_ratio::product_cdf(&law, z)
                    .map_err(|e| CliError::numeric("product_cdf", e))?,
                density_or_inf(product_ratio::ratio_pdf(&law, z), "ratio_pdf")?,
                product_ratio::ratio_cdf(&law, z).map_err(|e| CliError::numeric("ratio_cdf", e))?,
            ]
        };
        table.rows.push(row);
    }
    with_output(&a.out.output, out, |w| table.write(a.out.format, w))?;
    Ok(exit::OK)
}

fn cmd_selfcheck(a: &SelfcheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let reports = selfcheck();
    with_output(&a.output, out, |w| {
        for r in &reports {
            write_json_line(w, r)?;
        }
        Ok(())
    })?;
    if reports.iter().any(|r| r.is_unexpected_failure()) {
        Ok(exit::SELFCHECK)
    } else {
        Ok(exit::OK)
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Tabulate(a) => cmd_tabulate(a, out),
        Command::Sample(a) => cmd_sample(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Prodratio(a) => cmd_prodratio(a, out),
        Command::Selfcheck(a) => cmd_selfcheck(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            exit::USAGE
        }
        Err(CliError::Numeric(msg)) => {
            let _ = writeln!(err, "numeric error in {msg}");
            exit::NUMERIC
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "i/o error: {e}");
            exit::NUMERIC
        }
    }
}
