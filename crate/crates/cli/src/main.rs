use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tiled_simplex::harness::{parse_budget, SuiteInput, SuiteOptions};
use tiled_simplex::{
    canonicalize, generate, parse_mps, run_suite, two_phase_solve, write_csv, AntiCycle, BenchMode,
    BenchRow, GenSpec, KernelMode, MemoryBudget, MpsDocument, SolverConfig, SparsityClass, Status,
};

#[derive(Parser)]
#[command(name = "tsimplex", version, about = "Dense revised simplex with a tiled memory model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one MPS file.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Device memory budget in bytes, or `unlimited`.
        #[arg(long, default_value = "unlimited", value_parser = budget_arg)]
        budget: MemoryBudget,
        #[arg(long, value_enum, default_value_t = Kernel::Cached)]
        kernel: Kernel,
        /// Append the result as a CSV report.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
    },
    /// Write a random feasible instance as MPS.
    Generate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_parser = class_arg)]
        class: SparsityClass,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: PathBuf,
    },
    /// Run a suite of instances under several memory modes.
    Bench {
        /// Every `*.mps` file in this directory.
        #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
        dir: Option<PathBuf>,
        /// One input per line: an MPS path or `gen:M:N:CLASS:SEED`.
        #[arg(long)]
        suite: Option<PathBuf>,
        /// Comma-separated `BUDGET:KERNEL` list, e.g. `unlimited:cached,4194304:naive`.
        #[arg(long, default_value = "unlimited:cached")]
        modes: String,
        #[arg(long, value_name = "OUT")]
        csv: PathBuf,
        /// Timed runs per instance and mode; the median is reported.
        #[arg(long, default_value_t = 3)]
        runs: usize,
        /// Also time a single-worker naive-kernel run and report speedups.
        #[arg(long)]
        reference: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = Rule::Tabu)]
    anticycle: Rule,
    #[arg(long)]
    tol_opt: Option<f64>,
    #[arg(long)]
    tol_pivot: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernel {
    Cached,
    Naive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Tabu,
    None,
}

fn budget_arg(s: &str) -> Result<MemoryBudget, String> {
    parse_budget(s).ok_or_else(|| format!("expected a byte count or `unlimited`, got `{s}`"))
}

fn class_arg(s: &str) -> Result<SparsityClass, String> {
    s.parse().map_err(|e| format!("{e}"))
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig {
            anticycle: match self.anticycle {
                Rule::Tabu => AntiCycle::Tabu,
                Rule::None => AntiCycle::None,
            },
            max_iter: self.max_iter,
            workers: self.workers,
            ..SolverConfig::default()
        };
        if let Some(t) = self.tol_opt {
            cfg.opt_tol = t;
        }
        if let Some(t) = self.tol_pivot {
            cfg.pivot_tol = t;
        }
        cfg
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            solver,
            budget,
            kernel,
            csv,
        } => {
            let mut cfg = solver.config();
            cfg.budget = budget;
            cfg.kernel = match kernel {
                Kernel::Cached => KernelMode::Cached,
                Kernel::Naive => KernelMode::Naive,
            };
            solve(&file, &cfg, csv.as_deref())
        }
        Command::Generate {
            rows,
            cols,
            class,
            seed,
            output,
        } => {
            if cols < rows {
                eprintln!("warning: {cols} columns for {rows} rows; the instance will have fewer columns than rows");
            }
            let lp = generate(&GenSpec::new(rows, cols, class, seed))?;
            std::fs::write(&output, MpsDocument::from_general_lp(&lp).to_mps_string())
                .with_context(|| format!("writing {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            dir,
            suite,
            modes,
            csv,
            runs,
            reference,
            solver,
        } => {
            let inputs = match (dir, suite) {
                (Some(d), _) => mps_files(&d)?,
                (None, Some(s)) => {
                    let text = std::fs::read_to_string(&s)
                        .with_context(|| format!("reading {}", s.display()))?;
                    SuiteInput::parse_suite(&text)?
                }
                (None, None) => bail!("either --dir or --suite is required"),
            };
            let modes = BenchMode::parse_list(&modes)?;
            if modes.is_empty() {
                bail!("no modes given");
            }
            let cfg = solver.config();
            cfg.validate()?;
            let rows = run_suite(&inputs, &cfg, &modes, &SuiteOptions { runs, reference });
            write_report(&csv, &rows)?;
            print_summary(&rows)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn mps_files(dir: &Path) -> Result<Vec<SuiteInput>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mps")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files.into_iter().map(SuiteInput::File).collect())
}

fn solve(file: &Path, cfg: &SolverConfig, csv: Option<&Path>) -> Result<ExitCode> {
    let bytes = std::fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    let doc = parse_mps(&bytes).with_context(|| format!("parsing {}", file.display()))?;
    let (lp, warnings) = doc.to_general_lp_with_warnings()?;
    for w in doc.warnings.iter().chain(&warnings) {
        eprintln!("warning: {w}");
    }
    let (std_lp, map) = canonicalize(&lp)?;

    let start = Instant::now();
    let rep = two_phase_solve(&std_lp, cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    let (x, z) = map.recover_solution(&rep.x, rep.objective)?;

    let mut out = io::stdout().lock();
    writeln!(out, "instance     {}", lp.name)?;
    writeln!(out, "status       {}", rep.status)?;
    if rep.status == Status::Optimal {
        writeln!(out, "objective    {z}")?;
        writeln!(out, "violation    {:e}", lp.max_violation(&x))?;
    }
    writeln!(out, "size         {} x {} (standard form)", std_lp.m, std_lp.n_total)?;
    writeln!(
        out,
        "iterations   {} ({} phase 1, {} phase 2)",
        rep.iterations(),
        rep.iterations_phase1,
        rep.iterations_phase2
    )?;
    writeln!(out, "seconds      {seconds:.6}")?;
    if rep.iterations() > 0 {
        writeln!(out, "per pivot    {:.3e}", seconds / rep.iterations() as f64)?;
    }
    writeln!(out, "case         {}", rep.case_used)?;
    let m = &rep.memory;
    writeln!(out, "device       {} reads, {} writes", m.device_reads, m.device_writes)?;
    writeln!(out, "transfers    {} B to device, {} B to host", m.h2d_bytes, m.d2h_bytes)?;
    if !rep.redundant_rows.is_empty() {
        writeln!(out, "redundant    {} rows", rep.redundant_rows.len())?;
    }

    if let Some(path) = csv {
        let label = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| lp.name.clone());
        write_report(path, &[BenchRow::from_report(label, &rep, z, seconds)])?;
    }

    Ok(ExitCode::from(match rep.status {
        Status::Optimal => 0,
        Status::Infeasible => 2,
        Status::Unbounded => 3,
        Status::IterationLimit => 4,
    }))
}

fn write_report(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    write_csv(&mut w, rows)?;
    w.flush()?;
    Ok(())
}

fn print_summary(rows: &[BenchRow]) -> Result<()> {
    let mut out = io::stdout().lock();
    let width = rows.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
    writeln!(out, "{:<width$}  {:<14}  {:>16}  {:>8}  {:>10}  {:>8}", "instance", "status", "objective", "iters", "seconds", "speedup")?;
    for r in rows {
        let z = r.objective.map(|z| z.to_string()).unwrap_or_default();
        let s = r.speedup.map(|s| format!("{s:.3}")).unwrap_or_default();
        writeln!(
            out,
            "{:<width$}  {:<14}  {:>16}  {:>8}  {:>10.4}  {:>8}",
            r.instance,
            r.status,
            z,
            r.iterations(),
            r.total_seconds,
            s
        )?;
    }
    Ok(())
}
