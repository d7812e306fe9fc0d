//! Benchmark harness: runs instances under several memory/kernel modes and
//! reports timings, iteration counts and memory counters as CSV.

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::engine::{KernelMode, MemoryBudget};
use crate::generator::{generate, GenSpec};
use crate::lp::{canonicalize, CanonicalMap, StandardFormLP};
use crate::mps::parse_mps;
use crate::simplex::{two_phase_solve, SolveReport, SolverConfig};

pub const CSV_HEADER: &str = "instance,status,objective,iterations_p1,iterations_p2,total_seconds,tpi_seconds,case,device_reads,device_writes,h2d_bytes,d2h_bytes,reference_seconds,speedup";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("parallel time must be positive")]
    NonPositiveTime,
    #[error("iteration count must be at least one")]
    ZeroIterations,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("CSV header mismatch: {0}")]
    Header(String),
    #[error("record {record}: bad value {value:?} for {field}")]
    BadField {
        record: usize,
        field: &'static str,
        value: String,
    },
    #[error("bad mode {0:?} (expected BUDGET:KERNEL, e.g. unlimited:cached)")]
    BadMode(String),
    #[error("bad suite line {0:?}")]
    BadSuiteLine(String),
}

/// `t_ref / t_par`.
pub fn speedup(t_ref: f64, t_par: f64) -> Result<f64, MetricError> {
    if t_par.is_nan() || t_par <= 0.0 {
        return Err(MetricError::NonPositiveTime);
    }
    Ok(t_ref / t_par)
}

/// Time per iteration.
pub fn tpi(total_seconds: f64, iterations: u64) -> Result<f64, MetricError> {
    if iterations == 0 {
        return Err(MetricError::ZeroIterations);
    }
    Ok(total_seconds / iterations as f64)
}

/// Rounds to 6 significant digits, the precision reals are written with.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub status: String,
    /// Objective of the original problem; absent when the run failed.
    pub objective: Option<f64>,
    pub iterations_p1: u64,
    pub iterations_p2: u64,
    pub total_seconds: f64,
    pub tpi_seconds: f64,
    /// `InCore`, `Tiled`, or empty for failed runs.
    pub case: String,
    pub device_reads: u64,
    pub device_writes: u64,
    pub h2d_bytes: u64,
    pub d2h_bytes: u64,
    pub reference_seconds: Option<f64>,
    pub speedup: Option<f64>,
}

impl BenchRow {
    pub fn failed(instance: impl Into<String>, status: impl Into<String>) -> Self {
        BenchRow {
            instance: instance.into(),
            status: status.into(),
            objective: None,
            iterations_p1: 0,
            iterations_p2: 0,
            total_seconds: 0.0,
            tpi_seconds: 0.0,
            case: String::new(),
            device_reads: 0,
            device_writes: 0,
            h2d_bytes: 0,
            d2h_bytes: 0,
            reference_seconds: None,
            speedup: None,
        }
    }

    /// Row for a finished solve; `objective` is in terms of the original problem.
    pub fn from_report(instance: impl Into<String>, rep: &SolveReport, objective: f64, seconds: f64) -> Self {
        let iters = rep.iterations() as u64;
        BenchRow {
            instance: instance.into(),
            status: rep.status.to_string(),
            objective: Some(objective),
            iterations_p1: rep.iterations_phase1 as u64,
            iterations_p2: rep.iterations_phase2 as u64,
            total_seconds: seconds,
            tpi_seconds: seconds / iters.max(1) as f64,
            case: rep.case_used.to_string(),
            device_reads: rep.memory.device_reads,
            device_writes: rep.memory.device_writes,
            h2d_bytes: rep.memory.h2d_bytes,
            d2h_bytes: rep.memory.d2h_bytes,
            reference_seconds: None,
            speedup: None,
        }
        .quantized()
    }

    pub fn iterations(&self) -> u64 {
        self.iterations_p1 + self.iterations_p2
    }

    /// Sets the reference time and the derived speedup.
    pub fn with_reference(mut self, reference_seconds: f64) -> Self {
        self.reference_seconds = Some(reference_seconds);
        self.speedup = Some(speedup(reference_seconds, self.total_seconds).unwrap_or(f64::INFINITY));
        self.quantized()
    }

    /// Every real rounded to 6 significant digits, so the row survives a
    /// CSV round trip unchanged.
    pub fn quantized(mut self) -> Self {
        self.objective = self.objective.map(round_sig6);
        self.total_seconds = round_sig6(self.total_seconds);
        self.tpi_seconds = round_sig6(self.tpi_seconds);
        self.reference_seconds = self.reference_seconds.map(round_sig6);
        self.speedup = self.speedup.map(round_sig6);
        self
    }
}

fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        // `round_sig6` leaves at most 6 significant digits, and Display
        // prints the shortest representation that parses back exactly.
        format!("{}", round_sig6(x))
    } else {
        x.to_string()
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

pub fn write_csv<W: io::Write>(out: W, rows: &[BenchRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.status.clone(),
            fmt_opt(r.objective),
            r.iterations_p1.to_string(),
            r.iterations_p2.to_string(),
            fmt_real(r.total_seconds),
            fmt_real(r.tpi_seconds),
            r.case.clone(),
            r.device_reads.to_string(),
            r.device_writes.to_string(),
            r.h2d_bytes.to_string(),
            r.d2h_bytes.to_string(),
            fmt_opt(r.reference_seconds),
            fmt_opt(r.speedup),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>, HarnessError> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(HarnessError::Header(header.join(",")));
    }
    let mut rows = Vec::new();
    for (idx, rec) in rd.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        fn bad(record: usize, field: &'static str, value: &str) -> HarnessError {
            HarnessError::BadField {
                record,
                field,
                value: value.to_string(),
            }
        }
        let real = |i: usize, name: &'static str| -> Result<f64, HarnessError> {
            field(i).parse::<f64>().map_err(|_| bad(idx, name, field(i)))
        };
        let opt = |i: usize, name: &'static str| -> Result<Option<f64>, HarnessError> {
            if field(i).is_empty() {
                Ok(None)
            } else {
                real(i, name).map(Some)
            }
        };
        let count = |i: usize, name: &'static str| -> Result<u64, HarnessError> {
            field(i).parse::<u64>().map_err(|_| bad(idx, name, field(i)))
        };
        rows.push(BenchRow {
            instance: field(0).to_string(),
            status: field(1).to_string(),
            objective: opt(2, "objective")?,
            iterations_p1: count(3, "iterations_p1")?,
            iterations_p2: count(4, "iterations_p2")?,
            total_seconds: real(5, "total_seconds")?,
            tpi_seconds: real(6, "tpi_seconds")?,
            case: field(7).to_string(),
            device_reads: count(8, "device_reads")?,
            device_writes: count(9, "device_writes")?,
            h2d_bytes: count(10, "h2d_bytes")?,
            d2h_bytes: count(11, "d2h_bytes")?,
            reference_seconds: opt(12, "reference_seconds")?,
            speedup: opt(13, "speedup")?,
        });
    }
    Ok(rows)
}

/// A device budget paired with a kernel flavour, written `BUDGET:KERNEL`
/// where `BUDGET` is `unlimited` or a byte count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchMode {
    pub budget: MemoryBudget,
    pub kernel: KernelMode,
}

impl BenchMode {
    pub fn apply(&self, cfg: &SolverConfig) -> SolverConfig {
        SolverConfig {
            budget: self.budget,
            kernel: self.kernel,
            ..cfg.clone()
        }
    }

    /// Parses a comma-separated list of modes.
    pub fn parse_list(s: &str) -> Result<Vec<BenchMode>, HarnessError> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl Default for BenchMode {
    fn default() -> Self {
        BenchMode {
            budget: MemoryBudget::unlimited(),
            kernel: KernelMode::Cached,
        }
    }
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.budget.device_bytes {
            None => write!(f, "unlimited:{}", self.kernel),
            Some(b) => write!(f, "{b}:{}", self.kernel),
        }
    }
}

pub fn parse_budget(s: &str) -> Option<MemoryBudget> {
    if s.eq_ignore_ascii_case("unlimited") {
        Some(MemoryBudget::unlimited())
    } else {
        s.parse().ok().map(MemoryBudget::bytes)
    }
}

pub fn parse_kernel(s: &str) -> Option<KernelMode> {
    match s.to_ascii_lowercase().as_str() {
        "cached" => Some(KernelMode::Cached),
        "naive" => Some(KernelMode::Naive),
        _ => None,
    }
}

impl FromStr for BenchMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let bad = || HarnessError::BadMode(s.to_string());
        let (b, k) = s.split_once(':').ok_or_else(bad)?;
        Ok(BenchMode {
            budget: parse_budget(b).ok_or_else(bad)?,
            kernel: parse_kernel(k).ok_or_else(bad)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteInput {
    File(PathBuf),
    Generated(GenSpec),
}

impl SuiteInput {
    pub fn label(&self) -> String {
        match self {
            SuiteInput::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            SuiteInput::Generated(g) => format!("{}#{}", g.name(), g.seed),
        }
    }

    /// One suite-file line: a path, or `gen:M:N:CLASS:SEED`.
    pub fn parse_line(line: &str) -> Result<SuiteInput, HarnessError> {
        let line = line.trim();
        let Some(rest) = line.strip_prefix("gen:") else {
            return Ok(SuiteInput::File(PathBuf::from(line)));
        };
        let bad = || HarnessError::BadSuiteLine(line.to_string());
        let parts: Vec<&str> = rest.split(':').collect();
        let [m, n, class, seed] = parts[..] else {
            return Err(bad());
        };
        Ok(SuiteInput::Generated(GenSpec::new(
            m.parse().map_err(|_| bad())?,
            n.parse().map_err(|_| bad())?,
            class.parse().map_err(|_| bad())?,
            seed.parse().map_err(|_| bad())?,
        )))
    }

    /// Parses a suite file, skipping blank lines and `#` comments.
    pub fn parse_suite(text: &str) -> Result<Vec<SuiteInput>, HarnessError> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(SuiteInput::parse_line)
            .collect()
    }

    /// Reads and canonicalizes the instance.
    pub fn load(&self) -> Result<(StandardFormLP, CanonicalMap), String> {
        let lp = match self {
            SuiteInput::File(p) => {
                let bytes = std::fs::read(p).map_err(|e| e.to_string())?;
                let doc = parse_mps(&bytes).map_err(|e| e.to_string())?;
                doc.to_general_lp().map_err(|e| e.to_string())?
            }
            SuiteInput::Generated(g) => generate(g).map_err(|e| e.to_string())?,
        };
        canonicalize(&lp).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Timed repetitions per (instance, mode); the median is reported.
    pub runs: usize,
    /// Also time a single-worker naive-kernel in-core run per instance and
    /// report speedups against it.
    pub reference: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            runs: 3,
            reference: false,
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Solves `lp` `runs` times; returns the first report and the median wall time.
fn timed(
    lp: &StandardFormLP,
    cfg: &SolverConfig,
    runs: usize,
) -> Result<(SolveReport, f64), String> {
    let mut times = Vec::with_capacity(runs);
    let mut first = None;
    for _ in 0..runs.max(1) {
        let t = Instant::now();
        let rep = two_phase_solve(lp, cfg).map_err(|e| e.to_string())?;
        times.push(t.elapsed().as_secs_f64());
        first.get_or_insert(rep);
    }
    Ok((first.expect("at least one run"), median(times)))
}

/// Runs every input under every mode; instances run sequentially and a
/// failing instance only affects its own rows.
pub fn run_suite(
    inputs: &[SuiteInput],
    cfg: &SolverConfig,
    modes: &[BenchMode],
    opts: &SuiteOptions,
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for input in inputs {
        let label = input.label();
        let name = |mode: &BenchMode| format!("{label}@{mode}");
        let (lp, map) = match input.load() {
            Ok(v) => v,
            Err(_) => {
                rows.extend(modes.iter().map(|m| BenchRow::failed(name(m), "ParseError")));
                continue;
            }
        };
        let reference = if opts.reference {
            let ref_cfg = SolverConfig {
                workers: 1,
                kernel: KernelMode::Naive,
                budget: MemoryBudget::unlimited(),
                ..cfg.clone()
            };
            timed(&lp, &ref_cfg, opts.runs).ok().map(|(_, t)| t)
        } else {
            None
        };
        for mode in modes {
            let row = match timed(&lp, &mode.apply(cfg), opts.runs) {
                Ok((rep, secs)) => {
                    let z = map
                        .recover_solution(&rep.x, rep.objective)
                        .map(|(_, z)| z)
                        .unwrap_or(f64::NAN);
                    let row = BenchRow::from_report(name(mode), &rep, z, secs);
                    match reference {
                        Some(t) => row.with_reference(t),
                        None => row,
                    }
                }
                Err(_) => BenchRow::failed(name(mode), "Error"),
            };
            rows.push(row);
        }
    }
    rows
}
