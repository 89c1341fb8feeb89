//! `robin-gaps`: spectra, gap series, statistics and lattice counts as CSV
//! or JSON tables, plus the numerical self-check.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use robin_gaps::disk::{disk_gaps, disk_lowest};
use robin_gaps::lattice::count_lattice;
use robin_gaps::rectangle::{desym_square_spectrum, rect_gaps, rect_lowest};
use robin_gaps::robin1d::{interval_gaps, interval_spectrum};
use robin_gaps::stats::{cumulative_mean, spacing_cdf};
use robin_gaps::verify::{determinism, run_all, Report};
use robin_gaps::{with_threads, Bc, Error, GapSeries, Spectrum};

const THREADS_VAR: &str = "ROBIN_GAPS_THREADS";

/// Rows cost O(μ) each, so the whole lattice table is quadratic in mu-max.
const LATTICE_TABLE_CAP: f64 = 20_000.0;

#[derive(Parser, Debug)]
#[command(name = "robin-gaps", version, about = "Robin-Neumann eigenvalue gaps of simple planar domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Lowest `count` eigenvalues with their mode labels.
    Spectrum,
    /// Robin-Neumann gaps d_n with running mean.
    Gaps,
    /// Mean gap at checkpoints against its limiting value.
    Mean,
    /// CDF of mean-normalized nearest-neighbour spacings.
    Spacing,
    /// Shifted lattice counts N_D(mu) for mu = 1 .. mu-max.
    Lattice,
    /// Run the numerical self-check and print a pass/fail report.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum DomainArg {
    Interval,
    Rectangle,
    Disk,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
struct Opts {
    #[arg(long, value_enum, global = true, default_value = "interval")]
    domain: DomainArg,
    /// Robin parameter; 0 is Neumann.
    #[arg(long, global = true, default_value_t = 1.0)]
    sigma: f64,
    /// Side ratio L of the rectangle [0,1] x [0,L] (rectangle only).
    #[arg(long, global = true)]
    aspect: Option<f64>,
    #[arg(long, global = true, default_value_t = 2000)]
    count: usize,
    /// Largest dilation for `lattice`.
    #[arg(long, global = true, default_value_t = 100.0)]
    mu_max: f64,
    /// Restrict the unit square to labels n <= m (spectrum and spacing).
    #[arg(long, global = true)]
    desymmetrize: bool,
    #[arg(long, value_enum, global = true, default_value = "csv")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunConfig {
    command: Command,
    domain: DomainArg,
    sigma: f64,
    aspect: Option<f64>,
    count: usize,
    mu_max: f64,
    desymmetrize: bool,
    format: Format,
    deterministic: bool,
}

enum Failure {
    Config(String),
    Library(Error),
    Io(std::io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Clone)]
enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

/// `%.15g`-style formatting: 15 significant digits, trailing zeros removed.
fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { "-" } else { "+" }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Real(x) => fmt_real(*x),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(t) => csv_field(t),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self, config: &RunConfig) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Int(i) => json!(i),
                        Cell::Real(x) => json!(x),
                        Cell::Bool(b) => json!(b),
                        Cell::Text(t) => json!(t),
                    };
                    obj.insert((*name).to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "config": config, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("tables serialize");
        s.push('\n');
        s
    }
}

fn validate(cli: &Cli) -> Result<RunConfig, Failure> {
    let o = &cli.opts;
    if !(o.sigma.is_finite() && o.sigma >= 0.0) {
        return Err(Failure::Config(format!("--sigma must be finite and >= 0, got {}", o.sigma)));
    }
    if let Some(a) = o.aspect {
        if o.domain != DomainArg::Rectangle {
            return Err(Failure::Config("--aspect applies only to --domain rectangle".into()));
        }
        if !(a > 0.0 && a <= 1.0) {
            return Err(Failure::Config(format!("--aspect must lie in (0, 1], got {a}")));
        }
    }
    if o.count == 0 {
        return Err(Failure::Config("--count must be positive".into()));
    }
    if !(o.mu_max.is_finite() && o.mu_max >= 1.0) {
        return Err(Failure::Config(format!("--mu-max must be finite and >= 1, got {}", o.mu_max)));
    }
    if o.desymmetrize && !(o.domain == DomainArg::Rectangle && o.aspect.unwrap_or(1.0) == 1.0) {
        return Err(Failure::Config("--desymmetrize applies only to the unit square".into()));
    }
    if cli.command == Command::Spacing && o.count < 2 {
        return Err(Failure::Config("spacing needs --count >= 2".into()));
    }
    Ok(RunConfig {
        command: cli.command,
        domain: o.domain,
        sigma: o.sigma,
        aspect: match o.domain {
            DomainArg::Rectangle => Some(o.aspect.unwrap_or(1.0)),
            _ => None,
        },
        count: o.count,
        mu_max: o.mu_max,
        desymmetrize: o.desymmetrize,
        format: o.format,
        deterministic: true,
    })
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Config(format!("{THREADS_VAR} must be an integer >= 1, got {v:?}"))),
        },
        Err(e) => Err(Failure::Config(format!("{THREADS_VAR}: {e}"))),
    }
}

fn levels(cfg: &RunConfig) -> Result<Spectrum, Error> {
    let bc = Bc::robin(cfg.sigma);
    match cfg.domain {
        DomainArg::Interval => interval_spectrum(bc, cfg.count),
        DomainArg::Rectangle if cfg.desymmetrize => desym_square_spectrum(cfg.sigma, cfg.count),
        DomainArg::Rectangle => rect_lowest(cfg.aspect.unwrap_or(1.0), bc, cfg.count),
        DomainArg::Disk => disk_lowest(cfg.sigma, cfg.count),
    }
}

fn gaps(cfg: &RunConfig) -> Result<GapSeries, Error> {
    match cfg.domain {
        DomainArg::Interval => interval_gaps(cfg.sigma, cfg.count),
        DomainArg::Rectangle => rect_gaps(cfg.aspect.unwrap_or(1.0), cfg.sigma, cfg.count),
        DomainArg::Disk => disk_gaps(cfg.sigma, cfg.count),
    }
}

/// 2σ |∂Ω| / |Ω|; for the interval the boundary is two points.
fn mean_limit(cfg: &RunConfig) -> f64 {
    match cfg.domain {
        DomainArg::Interval => 4.0 * cfg.sigma,
        DomainArg::Rectangle => {
            let l = cfg.aspect.unwrap_or(1.0);
            4.0 * cfg.sigma * (1.0 + l) / l
        }
        DomainArg::Disk => 4.0 * cfg.sigma,
    }
}

fn spectrum_table(cfg: &RunConfig) -> Result<Table, Error> {
    let s = levels(cfg)?;
    let rows = s
        .levels
        .iter()
        .enumerate()
        .map(|(i, l)| vec![Cell::Int(i as i64), Cell::Real(l.value), Cell::Int(l.label.n), Cell::Int(l.label.m)])
        .collect();
    Ok(Table { columns: vec!["rank", "eigenvalue", "n", "m"], rows })
}

fn gaps_table(cfg: &RunConfig) -> Result<Table, Error> {
    let g = gaps(cfg)?;
    let means = cumulative_mean(&g)?;
    let rows = g
        .entries()
        .zip(means)
        .map(|((n, d), (_, m))| vec![Cell::Int(n as i64), Cell::Real(d), Cell::Real(m)])
        .collect();
    Ok(Table { columns: vec!["n", "d_n", "cumulative_mean"], rows })
}

fn mean_table(cfg: &RunConfig) -> Result<Table, Error> {
    let g = gaps(cfg)?;
    let means = cumulative_mean(&g)?;
    let limit = mean_limit(cfg);
    let mut checkpoints: Vec<usize> = std::iter::successors(Some(10usize), |c| c.checked_mul(10))
        .take_while(|&c| c < cfg.count)
        .collect();
    checkpoints.push(cfg.count);
    let rows = checkpoints
        .into_iter()
        .map(|n| {
            let m = means[n - 1].1;
            let dev = if limit == 0.0 { m } else { m / limit - 1.0 };
            vec![Cell::Int(n as i64), Cell::Real(m), Cell::Real(limit), Cell::Real(dev)]
        })
        .collect();
    Ok(Table { columns: vec!["count", "mean", "limit", "relative_deviation"], rows })
}

fn spacing_table(cfg: &RunConfig) -> Result<Table, Error> {
    let grid: Vec<f64> = (0..=60).map(|i| i as f64 * 0.05).collect();
    let stats = spacing_cdf(&levels(cfg)?, &grid)?;
    let rows = stats
        .cdf_samples
        .iter()
        .map(|&(y, f)| vec![Cell::Real(y), Cell::Real(f)])
        .collect();
    Ok(Table { columns: vec!["y", "cdf"], rows })
}

fn lattice_table(cfg: &RunConfig) -> Result<Table, Error> {
    if cfg.mu_max > LATTICE_TABLE_CAP {
        return Err(Error::Resource { what: "lattice table mu-max", requested: cfg.mu_max, limit: LATTICE_TABLE_CAP });
    }
    let top = cfg.mu_max.floor() as usize;
    let mut rows = Vec::with_capacity(top);
    for i in 1..=top {
        let c = count_lattice(i as f64)?;
        rows.push(vec![
            Cell::Real(c.mu),
            Cell::Int(c.count as i64),
            Cell::Real(c.area_term),
            Cell::Real(c.perimeter_term),
            Cell::Real(c.residual),
        ]);
    }
    Ok(Table { columns: vec!["mu", "count", "area_term", "perimeter_term", "residual"], rows })
}

/// Checks 1 to 11 under the configured pool, then check 12 by rerunning them
/// under a second thread count.
fn verify_report(threads: Option<usize>) -> Report {
    let primary = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let other = if primary == 1 { 8 } else { 1 };
    let first = with_threads(primary, run_all);
    let second = with_threads(other, run_all);
    let det = determinism(&first, &second, primary, other);
    let mut report = first;
    report.checks.push(det);
    report
}

fn verify_table(report: &Report) -> Table {
    let rows = report
        .checks
        .iter()
        .map(|c| vec![Cell::Int(c.id as i64), Cell::Text(c.title.to_string()), Cell::Bool(c.passed), Cell::Text(c.detail.clone())])
        .collect();
    Table { columns: vec!["id", "title", "passed", "detail"], rows }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = validate(cli)?;
    let threads = threads_from_env()?;
    let output = cli.opts.output.as_ref();
    if cfg.command == Command::Verify {
        let report = verify_report(threads);
        let text = match cfg.format {
            Format::Csv => report.render(),
            Format::Json => verify_table(&report).to_json(&cfg),
        };
        emit(&text, output)?;
        return if report.all_passed() { Ok(()) } else { Err(Failure::Verification) };
    }
    let build = || match cfg.command {
        Command::Spectrum => spectrum_table(&cfg),
        Command::Gaps => gaps_table(&cfg),
        Command::Mean => mean_table(&cfg),
        Command::Spacing => spacing_table(&cfg),
        Command::Lattice => lattice_table(&cfg),
        Command::Verify => unreachable!("handled above"),
    };
    let table = match threads {
        Some(n) => with_threads(n, build),
        None => build(),
    }?;
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(&cfg),
    };
    emit(&text, output)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e @ Error::Resource { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(8.0), "8");
        assert_eq!(fmt_real(0.1), "0.1");
        assert_eq!(fmt_real(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_real(1.5e-7), "1.5e-07");
        assert_eq!(fmt_real(2.5e20), "2.5e+20");
        assert_eq!(fmt_real(-42.125), "-42.125");
        assert_eq!(fmt_real(99999.99999999999), "100000");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn mean_limits() {
        let cfg = |domain, aspect| RunConfig {
            command: Command::Mean,
            domain,
            sigma: 1.0,
            aspect,
            count: 10,
            mu_max: 10.0,
            desymmetrize: false,
            format: Format::Csv,
            deterministic: true,
        };
        assert_eq!(mean_limit(&cfg(DomainArg::Rectangle, Some(1.0))), 8.0);
        assert_eq!(mean_limit(&cfg(DomainArg::Disk, None)), 4.0);
        assert_eq!(mean_limit(&cfg(DomainArg::Interval, None)), 4.0);
    }
}
