mod config;
mod svg;
mod table;
mod tasks;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use driven_jcm::Execution;
use serde_json::json;

use config::{RunConfig, Task};
use tasks::{Run, RunError};

/// Sweep exact moments of the driven Jaynes-Cummings model and write CSV
/// time series of squeezing and entanglement criteria.
#[derive(Debug, Parser)]
#[command(name = "djcm", version)]
struct Cli {
    /// JSON run configuration; omitted fields take their defaults
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Task to run (repeatable); replaces the tasks listed in the config
    #[arg(long = "task", value_name = "NAME", value_parser = parse_task)]
    tasks: Vec<Task>,
    /// Detuning in units of the effective coupling
    #[arg(long, value_name = "X", allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Truncation of the analytic double sums
    #[arg(long, value_name = "N")]
    ell: Option<usize>,
    /// Output directory
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Also write one SVG line plot per CSV column
    #[arg(long)]
    svg: bool,
    /// Evaluate grid points on the calling thread only
    #[arg(long)]
    sequential: bool,
}

fn parse_task(name: &str) -> Result<Task, String> {
    Task::parse(name).ok_or_else(|| {
        format!("unknown task `{name}` (moments, squeezing, epr, sv, oracle-compare)")
    })
}

fn effective_config(cli: &Cli) -> Result<RunConfig, RunError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(|e| RunError::Config(e.0))?,
        None => RunConfig::default(),
    };
    if !cli.tasks.is_empty() {
        config.tasks = cli.tasks.clone();
    }
    if let Some(d) = cli.delta {
        config.delta_over_kappa_eff = d;
    }
    if let Some(ell) = cli.ell {
        config.ell = ell;
    }
    let mut seen = Vec::new();
    config.tasks.retain(|t| {
        let fresh = !seen.contains(t);
        seen.push(*t);
        fresh
    });
    config.validate().map_err(|e| RunError::Config(e.0))?;
    Ok(config)
}

fn write(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents)
        .map_err(|e| RunError::Config(format!("writing {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(), RunError> {
    let config = effective_config(cli)?;
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    fs::create_dir_all(&cli.out)
        .map_err(|e| RunError::Config(format!("{}: {e}", cli.out.display())))?;

    let start = Instant::now();
    let runner = Run::new(config.clone(), exec)?;
    let mut files = Vec::new();
    let mut mismatch = None;
    for &task in &config.tasks {
        let (table, failed) = runner.table(task)?;
        if let Some((row, column)) = table.first_non_finite() {
            return Err(RunError::Numeric(format!(
                "{}: non-finite `{column}` in row {}",
                task.name(),
                row + 1
            )));
        }
        let csv = format!("{}.csv", task.name());
        write(&cli.out.join(&csv), &table.to_csv())?;
        files.push(csv);
        if cli.svg {
            for (label, xs, ys) in table.series() {
                let name = format!("{}_{label}.svg", task.name());
                let title = format!("{} {label}", task.name());
                write(
                    &cli.out.join(&name),
                    &svg::line_plot(&title, "kappa_eff t", &xs, &ys),
                )?;
                files.push(name);
            }
        }
        if mismatch.is_none() {
            mismatch = failed;
        }
    }

    let meta = json!({
        "tool": "djcm",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "execution": format!("{exec:?}").to_lowercase(),
        "parallel_available": Execution::parallel_available(),
        "elapsed_seconds": start.elapsed().as_secs_f64(),
        "files": files,
        "oracle_mismatch": mismatch.as_ref().map(|m| m.to_string()),
    });
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    write(&cli.out.join("run.json"), &(text + "\n"))?;

    match mismatch {
        Some(m) => Err(m),
        None => Ok(()),
    }
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
        Err(e) => {
            eprintln!("djcm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
