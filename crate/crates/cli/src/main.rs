//! `fsslab`: exit 0 on success, 1 when a mathematical check fails, 2 on
//! input or usage errors.

mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, ExperimentAction, TablesAction};
use commands::MetricChecks;
use report::{CliError, Outcome};

/// `--threads`, then `FSSLAB_THREADS`, then the available parallelism.
fn threads(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return if n == 0 { Err(CliError::Input("--threads must be at least 1".into())) } else { Ok(n) };
    }
    match std::env::var("FSSLAB_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| CliError::Input(format!("FSSLAB_THREADS must be a positive integer, got '{v}'"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Pages { model, rmax, bidegree } => commands::pages(model, *rmax, bidegree.as_deref()),
        Command::Betti { model } => commands::betti(model),
        Command::CheckMetric { model, metric, balanced, skt, gauduchon, standard, c1 } => commands::check_metric(
            model,
            metric,
            MetricChecks { balanced: *balanced, skt: *skt, gauduchon: *gauduchon, standard: *standard, c1: *c1 },
        ),
        Command::Class { model, form, page, bidegree } => commands::class(model, form, *page, bidegree),
        Command::Catalog { action } => commands::catalog_cmd(action),
        Command::Product { left, right } => commands::product(left, right),
        Command::Kunneth { left, right, rmax } => commands::kunneth(left, right, *rmax),
        Command::Cdga { action } => commands::cdga_cmd(action),
        Command::Tables { action: TablesAction::Reproduce { table } } => commands::tables_reproduce(*table),
        Command::Experiment { action: ExperimentAction::DnVanishing { br_max } } => commands::dn_vanishing(*br_max),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let n = threads(cli.threads)?;
    let start = Instant::now();
    let mut out = fsslab_core::exec::with_threads(n, || dispatch(&cli.command))?;
    out.report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    out.report.stats.threads = n;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Input(msg)) => {
            eprintln!("fsslab: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        match serde_json::to_string_pretty(&out.report) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("fsslab: {e}");
                return ExitCode::from(2);
            }
        }
    } else if cli.csv {
        match &out.table {
            Some(t) => {
                let only = match &cli.command {
                    Command::Pages { bidegree: Some(b), .. } => commands::parse_pair(b).ok(),
                    _ => None,
                };
                report::csv(t, only)
            }
            None => {
                eprintln!("fsslab: --csv applies to commands that produce a page table");
                return ExitCode::from(2);
            }
        }
    } else {
        out.text.clone()
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    if out.report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
