//! `flowshop` — command-line front end for the flowshop makespan engine.
//!
//! Subcommands: `makespan`, `gantt`, `sweep`, `fit`, `shape`, `asymptote`,
//! `oracle`. Exit codes: 0 success, 1 usage error, 2 validation or
//! infeasibility, 3 numerical failure. Randomized commands require an
//! explicit `--seed`; there is no wall-clock seeding.

mod error;
mod gantt;
mod io;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use flowshop_core::fit::{fit_means, FitResult};
use flowshop_core::lattice::{lpp, lpp_bruteforce, LatticeWeights};
use flowshop_core::schedule::{schedule_fiducial, sweep_fiducial};
use flowshop_core::shape::{asymptotic_makespan, shape_closed_form, shape_tilde, ShapeParams};
use flowshop_core::sweep::{monte_carlo_sweep, Rule};
use flowshop_core::{DistributionSpec, ProcessingTimeTable};

use error::{CliError, Result};
use gantt::GanttDocument;

#[derive(Parser)]
#[command(name = "flowshop", version, about = "Flowshop makespan laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TableArgs {
    /// Processing time table: CSV, one row per machine, no header.
    #[arg(long)]
    table: PathBuf,
    /// Tolerate (and skip) a non-numeric header row.
    #[arg(long)]
    header: bool,
}

impl TableArgs {
    fn load(&self) -> Result<ProcessingTimeTable> {
        let text = fs::read_to_string(&self.table)
            .map_err(|e| CliError::Usage(format!("{}: {e}", self.table.display())))?;
        io::parse_table(&text, self.header)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Normal,
    Spt,
    Lpt,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Rule {
        match r {
            RuleArg::Normal => Rule::Normal,
            RuleArg::Spt => Rule::Spt,
            RuleArg::Lpt => Rule::Lpt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeKind {
    Exp,
    Geo,
}

#[derive(Args)]
struct ShapeParamArgs {
    /// exp: exponential weights; geo: geometric weights.
    #[arg(long, value_enum)]
    kind: ShapeKind,
    /// Mean of the exponential distribution (required for --kind exp).
    #[arg(long)]
    lambda: Option<f64>,
    /// Success parameter of the geometric distribution (required for --kind geo).
    #[arg(long)]
    q: Option<f64>,
}

impl ShapeParamArgs {
    fn params(&self) -> Result<ShapeParams> {
        match self.kind {
            ShapeKind::Exp => {
                let lambda = self
                    .lambda
                    .ok_or_else(|| CliError::Usage("--kind exp requires --lambda".into()))?;
                Ok(ShapeParams::exponential(lambda)?)
            }
            ShapeKind::Geo => {
                let q = self
                    .q
                    .ok_or_else(|| CliError::Usage("--kind geo requires --q".into()))?;
                Ok(ShapeParams::geometric(q)?)
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GanttFormat {
    Json,
    Svg,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Makespan for one fiducial machine or for all of them.
    Makespan {
        #[command(flatten)]
        table: TableArgs,
        /// Fiducial machine index (1-based).
        #[arg(long, conflicts_with = "all")]
        fiducial: Option<usize>,
        /// Sweep every fiducial index (default when --fiducial is absent).
        #[arg(long)]
        all: bool,
    },
    /// Render the schedule for one fiducial machine as a Gantt chart.
    Gantt {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        fiducial: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: GanttFormat,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo sweep of mean makespan versus fiducial index.
    Sweep {
        /// Distribution as JSON, e.g. '{"kind":"exponential","lambda":2.0}'.
        #[arg(long)]
        dist: String,
        #[arg(long)]
        machines: usize,
        #[arg(long)]
        jobs: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed (required; results are reproducible by construction).
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "normal")]
        rule: RuleArg,
        /// Output CSV path; a JSON sidecar is written next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit the two-shape-function curve to a sweep CSV.
    Fit {
        /// Sweep CSV produced by `sweep`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output JSON path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form shape function g(xi, 1) and its centered version.
    Shape {
        #[command(flatten)]
        params: ShapeParamArgs,
        #[arg(long)]
        xi: f64,
    },
    /// Asymptotic normalized makespan for machine/job ratio kappa and
    /// relative fiducial position tau.
    Asymptote {
        #[command(flatten)]
        params: ShapeParamArgs,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        tau: f64,
    },
    /// Cross-check lattice DP, brute-force enumeration, and the scheduler.
    Oracle {
        #[command(flatten)]
        table: TableArgs,
    },
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Makespan { table, fiducial, all: _ } => {
            let table = table.load()?;
            match fiducial {
                Some(nu) => {
                    let sch = schedule_fiducial(&table, nu)?;
                    println!("{}", sch.makespan());
                }
                None => {
                    for (idx, ms) in sweep_fiducial(&table).iter().enumerate() {
                        println!("{},{ms}", idx + 1);
                    }
                }
            }
        }
        Command::Gantt { table, fiducial, format, out } => {
            let table = table.load()?;
            let sch = schedule_fiducial(&table, fiducial)?;
            let doc = GanttDocument::new(&sch, &table)?;
            let rendered = match format {
                GanttFormat::Json => doc.to_json(),
                GanttFormat::Svg => doc.to_svg(),
                GanttFormat::Text => doc.to_text(),
            };
            write_or_print(out.as_deref(), &rendered)?;
        }
        Command::Sweep { dist, machines, jobs, trials, seed, rule, out } => {
            let spec: DistributionSpec = serde_json::from_str(&dist)
                .map_err(|e| CliError::Usage(format!("--dist: {e}")))?;
            let sweep = monte_carlo_sweep(&spec, machines, jobs, trials, seed, rule.into())?;
            fs::write(&out, io::serialize_sweep(&sweep))
                .map_err(|e| CliError::Usage(format!("{}: {e}", out.display())))?;
            let meta_path = out.with_extension("meta.json");
            let meta = serde_json::to_string_pretty(&io::sweep_meta(&sweep)).expect("meta serializes");
            fs::write(&meta_path, meta)
                .map_err(|e| CliError::Usage(format!("{}: {e}", meta_path.display())))?;
            eprintln!("wrote {} and {}", out.display(), meta_path.display());
        }
        Command::Fit { input, out } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
            let stats = io::parse_sweep_csv(&text)?;
            let means: Vec<f64> = stats.iter().map(|s| s.mean).collect();
            let fit = fit_means(&means)?;
            let json = fit_to_json(&fit);
            write_or_print(out.as_deref(), &json)?;
        }
        Command::Shape { params, xi } => {
            let p = params.params()?;
            println!("g: {}", shape_closed_form(&p, xi)?);
            println!("g_tilde: {}", shape_tilde(&p, xi)?);
        }
        Command::Asymptote { params, kappa, tau } => {
            let p = params.params()?;
            println!("{}", asymptotic_makespan(kappa, tau, &p)?);
        }
        Command::Oracle { table } => {
            let table = table.load()?;
            let grid = LatticeWeights::from(&table);
            let dp = lpp(&grid);
            let brute = lpp_bruteforce(&grid)?;
            let scheduled = schedule_fiducial(&table, 1)?.makespan();
            println!("lpp: {dp}");
            println!("bruteforce: {brute}");
            println!("makespan(nu=1): {scheduled}");
            if dp != brute || dp != scheduled {
                return Err(CliError::Validation(
                    "oracle mismatch: lattice DP, brute force, and scheduler disagree".into(),
                ));
            }
            println!("ok");
        }
    }
    Ok(())
}

fn fit_to_json(fit: &FitResult) -> String {
    let value = serde_json::json!({
        "A": fit.amplitude,
        "B": fit.offset,
        "alpha": fit.alpha,
        "rmse": fit.rmse,
        "alpha_lo": fit.alpha_lo,
        "alpha_hi": fit.alpha_hi,
        "identifiable": fit.identifiable,
    });
    let mut out = serde_json::to_string_pretty(&value).expect("fit serializes");
    out.push('\n');
    out
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints --help/--version through the error path too; those
            // exit 0, real usage errors exit 1.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
