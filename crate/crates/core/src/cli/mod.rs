//! `ifdr` command line: `run`, `validate` and `compare`.

pub mod config;
pub mod experiment;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;
use std::thread;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{Experiment, GammaRule, RunArgs, RunConfig};
pub use experiment::{CliRecord, Outcome, Prepared};

use crate::engine::{find_certificate, max_fixed_tau};
use crate::error::{Error, Result};
use crate::model::trace::{write_csv, write_jsonl};
use crate::model::InertiaSchedule;

#[derive(Debug, Parser)]
#[command(name = "ifdr", version, about = "Inertial forward-Douglas-Rachford splitting benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment and write trace.jsonl, trace.csv and summary.json.
    Run(RunArgs),
    /// Check step size, inertia and relaxation against the convergence conditions.
    Validate(ValidateArgs),
    /// Run one experiment under several inertia schedules.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, conflicts_with = "gamma_rel", required_unless_present = "gamma_rel")]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub gamma_rel: Option<f64>,
    /// Lipschitz constant of the smooth term.
    #[arg(long, default_value_t = 1.0)]
    pub lipschitz: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Print the certificate as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated inertia schedules, e.g. `zero,restart`.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub schedules: Vec<String>,
}

/// Exit status by error class.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Dataset(_) | Error::Io(_) => 2,
        Error::Divergence { .. } => 3,
        _ => 1,
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn execute(command: &Command) -> Result<u8> {
    match command {
        Command::Run(args) => cmd_run(&RunConfig::from_args(args)?).map(|_| 0),
        Command::Validate(args) => cmd_validate(args),
        Command::Compare(args) => cmd_compare(args).map(|_| 0),
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub experiment: Experiment,
    pub inertia: String,
    pub gamma: f64,
    pub lipschitz: f64,
    pub lambda: f64,
    pub iterations: usize,
    pub restarts: usize,
    pub stopped_early: bool,
    pub final_objective: Option<f64>,
    pub final_feas_f: Option<f64>,
    pub final_feas_g: Option<f64>,
    pub final_metric: Option<f64>,
    pub criteria_iter: Option<usize>,
    pub wall_time_seconds: f64,
}

fn write_traces(dir: &Path, records: &[CliRecord]) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_jsonl(records, BufWriter::new(File::create(dir.join("trace.jsonl"))?))?;
    write_csv(records, BufWriter::new(File::create(dir.join("trace.csv"))?))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn summarize(cfg: &RunConfig, inertia: InertiaSchedule, out: &Outcome, wall: f64) -> Summary {
    let last = out.records.last();
    Summary {
        experiment: cfg.experiment,
        inertia: inertia.to_string(),
        gamma: out.gamma,
        lipschitz: out.lipschitz,
        lambda: cfg.lambda,
        iterations: out.records.len(),
        restarts: out.restarts,
        stopped_early: out.stopped_early,
        final_objective: last.map(|r| r.objective),
        final_feas_f: last.map(|r| r.feas_f),
        final_feas_g: last.map(|r| r.feas_g),
        final_metric: last.and_then(|r| r.metric),
        criteria_iter: out.criteria_iter,
        wall_time_seconds: wall,
    }
}

pub fn cmd_run(cfg: &RunConfig) -> Result<Summary> {
    let start = Instant::now();
    let prepared = experiment::prepare(cfg)?;
    let out = prepared.run(cfg, cfg.inertia)?;
    let summary = summarize(cfg, cfg.inertia, &out, start.elapsed().as_secs_f64());
    write_traces(&cfg.out, &out.records)?;
    write_json(&cfg.out.join("summary.json"), &summary)?;
    println!(
        "{} {}: {} iterations, {} restarts, objective {:?}",
        cfg.experiment_name(),
        cfg.inertia,
        summary.iterations,
        summary.restarts,
        summary.final_objective
    );
    Ok(summary)
}

impl RunConfig {
    fn experiment_name(&self) -> String {
        serde_json::to_value(self.experiment).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

#[derive(Debug, Serialize)]
struct ValidateReport<'a> {
    #[serde(flatten)]
    certificate: &'a crate::model::TheoremCertificate,
    max_fixed_tau: f64,
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<u8> {
    let l = args.lipschitz;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParameter(format!("--lipschitz must be positive, got {l}")));
    }
    let gamma = match (args.gamma, args.gamma_rel) {
        (Some(g), _) => g,
        (None, Some(c)) => c / l,
        (None, None) => return Err(Error::InvalidParameter("--gamma or --gamma-rel is required".into())),
    };
    let cert = find_certificate(gamma, l, args.tau, args.lambda);
    let max_tau = max_fixed_tau(gamma, l, args.lambda);
    if args.json {
        let report = ValidateReport { certificate: &cert, max_fixed_tau: max_tau };
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?);
    } else {
        println!("{}", if cert.valid { "valid" } else { "invalid" });
        println!("gamma = {}  L = {}  tau = {}  lambda = {}", cert.gamma, cert.lipschitz, cert.tau, cert.lambda);
        println!("alpha = {}", cert.alpha);
        println!("witnesses: kappa = {}  delta = {}  sigma = {}", cert.kappa, cert.delta, cert.sigma);
        println!("lambda upper bound = {}", cert.lambda_upper);
        println!("largest certified constant tau = {max_tau}");
        for reason in &cert.reasons {
            println!("  - {reason}");
        }
    }
    Ok(if cert.valid { 0 } else { 1 })
}

/// Column label for one schedule; repeated schedules get a `#k` suffix.
fn labels(schedules: &[InertiaSchedule]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(schedules.len());
    for (i, s) in schedules.iter().enumerate() {
        let base = s.to_string();
        let dup = schedules[..i].iter().filter(|p| **p == *s).count();
        out.push(if dup == 0 { base } else { format!("{base}#{}", dup + 1) });
    }
    out
}

pub fn cmd_compare(args: &CompareArgs) -> Result<Vec<Summary>> {
    let start = Instant::now();
    let cfg = RunConfig::from_args(&args.run)?;
    if args.schedules.len() < 2 {
        return Err(Error::InvalidParameter("compare needs at least two schedules".into()));
    }
    let schedules = args
        .schedules
        .iter()
        .map(|s| {
            let sched = InertiaSchedule::from_str(s.trim())?;
            RunConfig { inertia: sched, ..cfg.clone() }.check()?;
            Ok(sched)
        })
        .collect::<Result<Vec<_>>>()?;
    let prepared = experiment::prepare(&cfg)?;

    let outcomes: Vec<Result<Outcome>> = thread::scope(|scope| {
        let (prepared, cfg) = (&prepared, &cfg);
        let handles: Vec<_> = schedules.iter().map(|&s| scope.spawn(move || prepared.run(cfg, s))).collect();
        handles.into_iter().map(|h| h.join().expect("run thread panicked")).collect()
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let wall = start.elapsed().as_secs_f64();

    let names = labels(&schedules);
    fs::create_dir_all(&cfg.out)?;
    let mut summaries = Vec::new();
    for ((name, sched), out) in names.iter().zip(&schedules).zip(&outcomes) {
        write_traces(&cfg.out.join(sanitize(name)), &out.records)?;
        summaries.push(summarize(&cfg, *sched, out, wall));
    }
    write_comparison(&cfg.out.join("compare.csv"), &names, &outcomes)?;
    write_json(&cfg.out.join("summary.json"), &summaries)?;
    for (name, s) in names.iter().zip(&summaries) {
        println!(
            "{name}: {} iterations, {} restarts, objective {:?}, criteria at {:?}",
            s.iterations, s.restarts, s.final_objective, s.criteria_iter
        );
    }
    Ok(summaries)
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect()
}

/// `iter,<objective per schedule>,<metric per schedule>`, padded with empty
/// cells where a run stopped early.
fn write_comparison(path: &Path, names: &[String], outcomes: &[Outcome]) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut header = vec!["iter".to_string()];
    header.extend(names.iter().map(|n| format!("objective[{n}]")));
    header.extend(names.iter().map(|n| format!("metric[{n}]")));
    w.write_record(&header).map_err(io)?;
    let rows = outcomes.iter().map(|o| o.records.len()).max().unwrap_or(0);
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for i in 0..rows {
        let mut row = vec![(i + 1).to_string()];
        row.extend(outcomes.iter().map(|o| cell(o.records.get(i).map(|r| r.objective))));
        row.extend(outcomes.iter().map(|o| cell(o.records.get(i).and_then(|r| r.metric))));
        w.write_record(&row).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
