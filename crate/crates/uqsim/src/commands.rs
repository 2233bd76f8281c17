//! Subcommand implementations behind the `uqsim` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use uqsim_core::compiler::{
    homogeneous_feasibility, inhomogeneous_cost, plan_cycle, trotter_schedule, CostReport, PulseSchedule, TrotterOptions,
};
use uqsim_core::experiments::{
    adiabatic_run, min_gap_capped, protocol_for_model, protocol_for_model_with, summarize, sweep_jobs, AdiabaticConfig,
    AdiabaticPath, Ramp, Stepping, SweepJob,
};
use uqsim_core::hardware::{crosstalk_report, realize_schedule, HardwareModel, TrapArrayModel};
use uqsim_core::pauli::{CoeffMatrix, Hamiltonian};
use uqsim_core::sim::{exact_evolve_capped, expectation, fidelity, run_schedule, StateVector};
use uqsim_core::DEFAULT_DENSE_CAP;

use crate::config::{self, Config};
use crate::error::{CliError, CliResult};
use crate::formats::{parse_schedule, parse_state, schedule_json, write_cost, write_log, write_schedule, write_state};
use crate::manifest::ArtifactWriter;
use crate::plot;

pub const DENSE_CAP_ENV: &str = "UQS_DENSE_CAP";

const TABLES_HELP: &str = "\
Output tables (CSV header, or JSON keys with --format json):
  observables  observable,value
  trajectory   step,k,time,fidelity,energy
  histogram    energy,weight
  gap          k,gap
  sweep        eta,steps,repetitions,mean,std_dev,std_err,min,max
  runs         eta,steps,repetition,seed,weight
  crosstalk    first,second,ratio
Every run writes manifest.json with a SHA-256 for each file.
Exit codes: 0 ok, 1 usage/parse/io, 2 infeasible on hardware, 3 policy, 4 numeric.";

#[derive(Debug, Parser)]
#[command(name = "uqsim", version, about = "Hamiltonian simulation compiler and simulator for lattice and trap quantum simulators")]
#[command(after_help = TABLES_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile `[target]` into a pulse schedule for `[hardware]`.
    Compile,
    /// Run a schedule on the statevector simulator.
    Simulate,
    /// Adiabatic ground-state preparation, and the error sweep if `[sweep]` is present.
    Adiabatic,
    /// Time cost, gate count and control complexity of `[target]`.
    Cost,
    /// Parasitic-to-intended coupling ratios of concurrent trap pushes.
    Crosstalk,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the error-model seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the error sweep.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Forces one thread regardless of --jobs.
    #[arg(long, global = true)]
    pub single_thread: bool,
    /// Compare the simulated state with exact evolution.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Overrides the adiabatic step count.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
}

impl CommonArgs {
    fn threads(&self) -> usize {
        if self.single_thread {
            1
        } else {
            self.jobs.unwrap_or(1).max(1)
        }
    }

    fn load(&self) -> CliResult<Config> {
        let path = self.config.as_ref().ok_or_else(|| CliError::Usage("--config is required".into()))?;
        Config::load(path)
    }
}

/// `UQS_DENSE_CAP` if set, else the library default.
pub fn dense_cap() -> CliResult<usize> {
    match std::env::var(DENSE_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{DENSE_CAP_ENV}=`{v}` is not a qubit count"))),
        Err(_) => Ok(DEFAULT_DENSE_CAP),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Compile => compile(&cli.common, out),
        Command::Simulate => simulate(&cli.common, out),
        Command::Adiabatic => adiabatic(&cli.common, out),
        Command::Cost => cost(&cli.common, out),
        Command::Crosstalk => crosstalk(&cli.common, out),
    }
}

fn say(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Clone, Debug)]
enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

fn table(w: &mut ArtifactWriter, fmt: OutputFormat, name: &str, headers: &[&str], rows: &[Vec<Cell>]) -> CliResult<()> {
    match fmt {
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| CliError::Output(e.to_string());
            csv.write_record(headers).map_err(err)?;
            for row in rows {
                csv.write_record(row.iter().map(Cell::csv)).map_err(err)?;
            }
            let bytes = csv.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            w.write(&format!("{name}.csv"), &bytes)?;
        }
        OutputFormat::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|row| Value::Object(headers.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect()))
                .collect();
            w.write(&format!("{name}.json"), json_bytes(&Value::Array(objs))?.as_slice())?;
        }
    }
    Ok(())
}

fn json_bytes(v: &Value) -> CliResult<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

/// Target and Trotter options; named models go through their protocol.
fn resolve_target(cfg: &Config, hw: &HardwareModel) -> CliResult<(Hamiltonian, TrotterOptions)> {
    let spec = cfg.section(&cfg.target, "target")?;
    let explicit = cfg.trotter.as_ref().and_then(|t| t.realization.as_ref()).is_some();
    if spec.model.is_some() {
        let named = config::named_model(spec, config::geometry(spec)?)?;
        let protocol =
            if explicit { protocol_for_model_with(&named, hw, &cfg.trotter_options()?)? } else { protocol_for_model(&named, hw)? };
        return Ok((protocol.target, protocol.options));
    }
    let options = if cfg.trotter.is_some() { cfg.trotter_options()? } else { TrotterOptions::default() };
    Ok((cfg.target_hamiltonian()?, options))
}

fn compiled(cfg: &Config, hw: &HardwareModel) -> CliResult<(Hamiltonian, PulseSchedule)> {
    let (target, options) = resolve_target(cfg, hw)?;
    let t = cfg.section(&cfg.trotter, "trotter")?;
    let schedule = trotter_schedule(&target, t.t_prime, t.epsilon, hw, &options)?;
    Ok((target, schedule))
}

fn cost_line(c: &CostReport) -> String {
    format!("c = {}  n = {}  L = {}  step_t = {}  chi = {}\n", c.time_cost, c.n, c.l, c.step_t, c.chi)
}

fn compile(args: &CommonArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = args.load()?;
    let hw = cfg.hardware_model()?;
    let (_, schedule) = compiled(&cfg, &hw)?;
    let realized = realize_schedule(&schedule, &hw)?;
    let mut w = ArtifactWriter::new(&args.out_dir)?;
    w.write("schedule.txt", write_schedule(&schedule).as_bytes())?;
    w.write("realized.txt", write_schedule(&realized).as_bytes())?;
    let cost = schedule.cost.ok_or_else(|| CliError::Output("compiler returned no cost report".into()))?;
    w.write("cost.txt", write_cost(&cost).as_bytes())?;
    if args.format == OutputFormat::Json {
        w.write("schedule.json", &json_bytes(&schedule_json(&schedule))?)?;
    }
    say(
        out,
        &format!(
            "compiled {} instructions ({} local layers, {} gates) for {}\n",
            schedule.len(),
            schedule.local_count(),
            schedule.gate_count(),
            hw.platform()
        ),
    )?;
    say(out, &cost_line(&cost))?;
    w.finish("compile", args.config.as_deref(), None, 1)?;
    Ok(())
}

fn simulate(args: &CommonArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = args.load()?;
    let sim = cfg.simulation.clone().unwrap_or_default();
    let seed = args.seed.or(sim.seed);
    let err = config::error_model(sim.eta_local, sim.eta_int, seed, sim.crosstalk.unwrap_or(false))?;
    let mut target = None;
    let mut schedule = match &sim.schedule {
        Some(p) => {
            let path = cfg.resolve(p);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            parse_schedule(&text).map_err(|source| CliError::Parse { path, source })?
        }
        None => {
            let hw = cfg.hardware_model()?;
            let (h, s) = compiled(&cfg, &hw)?;
            target = Some(h);
            s
        }
    };
    if sim.realize.unwrap_or(false) {
        schedule = realize_schedule(&schedule, &cfg.hardware_model()?)?;
    }
    let n = schedule.n_qubits;
    let initial = match &sim.initial_file {
        Some(p) => {
            let path = cfg.resolve(p);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            parse_state(&text).map_err(|source| CliError::Parse { path, source })?
        }
        None => StateVector::basis(n, sim.initial.unwrap_or(0))?,
    };
    let mut state = initial.clone();
    let log = run_schedule(&mut state, &schedule, err.as_ref())?;

    let mut w = ArtifactWriter::new(&args.out_dir)?;
    w.write("state.txt", write_state(&state).as_bytes())?;
    w.write("log.json", write_log(&log).as_bytes())?;
    let mut rows = Vec::new();
    for label in &sim.observables {
        let ops = config::observable(label, n)?;
        rows.push(vec![Cell::Text(label.clone()), Cell::Num(expectation(&state, &ops)?)]);
    }
    table(&mut w, args.format, "observables", &["observable", "value"], &rows)?;
    say(out, &format!("ran {} instructions on {n} qubits; norm {}\n", schedule.len(), state.norm()))?;

    if args.oracle {
        let target = match target {
            Some(t) => t,
            None => resolve_target(&cfg, &cfg.hardware_model()?)?.0,
        };
        let t = cfg.section(&cfg.trotter, "trotter")?;
        let exact = exact_evolve_capped(&target, t.t_prime, &initial, dense_cap()?)?;
        let f = fidelity(&state, &exact)?;
        let bound = 1.0 - 2.0 * t.epsilon;
        let verdict = if f >= bound { "ok" } else { "below bound" };
        say(out, &format!("oracle fidelity {f:.12} (bound 1-2eps = {bound}) {verdict}\n"))?;
    }
    w.finish("simulate", args.config.as_deref(), err.map(|e| e.seed), 1)?;
    Ok(())
}

fn adiabatic(args: &CommonArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = args.load()?;
    let spec = cfg.section(&cfg.adiabatic, "adiabatic")?;
    let hw = cfg.hardware_model()?;
    let h0 = cfg.hamiltonian(&spec.initial)?;
    let h1 = cfg.hamiltonian(&spec.target)?;
    let steps = args.steps.unwrap_or(spec.steps);
    let seed = args.seed.or(spec.seed);
    let crosstalk = spec.crosstalk.unwrap_or(false);
    let cap = dense_cap()?;

    let mut ac = AdiabaticConfig::new(h0.clone(), h1.clone(), steps, spec.theta1);
    if let Some(r) = &spec.ramp {
        ac.ramp = Ramp::from_name(r).ok_or_else(|| CliError::Usage(format!("unknown ramp `{r}` (linear or cosine)")))?;
    }
    ac.stepping = match spec.stepping.as_deref().unwrap_or("trotter") {
        "trotter" => Stepping::Trotter,
        "exact" => Stepping::Exact,
        other => return Err(CliError::Usage(format!("unknown stepping `{other}` (trotter or exact)"))),
    };
    ac.record_every = spec.record_every.unwrap_or(1);
    ac.dense_cap = cap;
    ac.error_model = config::error_model(spec.eta_local, spec.eta_int, seed, crosstalk)?;

    let result = adiabatic_run(&ac, &hw)?;
    let mut w = ArtifactWriter::new(&args.out_dir)?;
    let rows: Vec<Vec<Cell>> = result
        .trajectory
        .iter()
        .map(|p| vec![Cell::Int(p.step as u64), Cell::Num(p.k), Cell::Num(p.time), Cell::Num(p.fidelity), Cell::Num(p.energy)])
        .collect();
    table(&mut w, args.format, "trajectory", &["step", "k", "time", "fidelity", "energy"], &rows)?;
    let rows: Vec<Vec<Cell>> = result.histogram.iter().map(|&(e, p)| vec![Cell::Num(e), Cell::Num(p)]).collect();
    table(&mut w, args.format, "histogram", &["energy", "weight"], &rows)?;
    w.write("final_state.txt", write_state(&result.final_state).as_bytes())?;
    let points: Vec<(f64, f64)> = result.trajectory.iter().map(|p| (p.step as f64, p.fidelity)).collect();
    w.write("trajectory.svg", plot::line_plot("Ground-space weight along the ramp", "step", "fidelity", &points).as_bytes())?;
    let bars: Vec<(String, f64)> = result.histogram.iter().map(|&(e, p)| (format!("{e:.3}"), p)).collect();
    w.write("histogram.svg", plot::bar_chart("Final weight per target eigenspace", "energy", "weight", &bars).as_bytes())?;
    say(
        out,
        &format!(
            "{steps} steps, simulated time {}: final ground-space weight {:.6}\n",
            result.simulated_time,
            result.ground_weight()
        ),
    )?;

    if let Some(samples) = spec.gap_samples {
        let scan = min_gap_capped(&h0, &h1, samples, cap)?;
        let rows: Vec<Vec<Cell>> = scan
            .samples
            .iter()
            .map(|&(k, g)| vec![Cell::Num(k), g.map_or(Cell::Text(String::new()), Cell::Num)])
            .collect();
        table(&mut w, args.format, "gap", &["k", "gap"], &rows)?;
        say(out, &format!("minimum gap {} at k = {}\n", scan.min_gap, scan.k))?;
    }

    let threads = args.threads();
    if let Some(sweep) = &cfg.sweep {
        let base = ac.error_model.map(|e| e.seed).or(seed).ok_or(uqsim_core::Error::MissingSeed)?;
        let jobs = sweep_jobs(&sweep.etas, &sweep.steps, sweep.repetitions, base)?;
        let mut paths = Vec::with_capacity(sweep.steps.len());
        for &s in &sweep.steps {
            let mut c = ac.clone();
            c.steps = s;
            c.error_model = None;
            c.record_every = s.max(1);
            paths.push(AdiabaticPath::new(&c, &hw)?);
        }
        let work = |job: &SweepJob| -> CliResult<f64> {
            let model = job.error_model(crosstalk)?;
            Ok(paths[job.steps_index].run(Some(&model))?.ground_weight())
        };
        let weights: Vec<f64> = if threads == 1 {
            jobs.iter().map(work).collect::<CliResult<_>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(work).collect::<CliResult<_>>())?
        };
        let runs: Vec<Vec<Cell>> = jobs
            .iter()
            .zip(&weights)
            .map(|(j, &wt)| {
                vec![Cell::Num(j.eta), Cell::Int(j.steps as u64), Cell::Int(j.repetition as u64), Cell::Int(j.seed), Cell::Num(wt)]
            })
            .collect();
        table(&mut w, args.format, "runs", &["eta", "steps", "repetition", "seed", "weight"], &runs)?;
        let summary = summarize(&jobs, &weights)?;
        let rows: Vec<Vec<Cell>> = summary
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.eta),
                    Cell::Int(r.steps as u64),
                    Cell::Int(r.repetitions as u64),
                    Cell::Num(r.mean),
                    Cell::Num(r.std_dev),
                    Cell::Num(r.std_err),
                    Cell::Num(r.min),
                    Cell::Num(r.max),
                ]
            })
            .collect();
        table(&mut w, args.format, "sweep", &["eta", "steps", "repetitions", "mean", "std_dev", "std_err", "min", "max"], &rows)?;
        let series: Vec<(String, Vec<(f64, f64)>)> = sweep
            .steps
            .iter()
            .map(|&s| (format!("{s} steps"), summary.iter().filter(|r| r.steps == s).map(|r| (r.eta, r.mean)).collect()))
            .collect();
        w.write("sweep.svg", plot::multi_line_plot("Mean final fidelity", "eta", "fidelity", &series).as_bytes())?;
        for r in &summary {
            say(out, &format!("eta {:<6} steps {:<5} mean {:.6} +- {:.6}\n", r.eta, r.steps, r.mean, r.std_err))?;
        }
    }
    w.finish("adiabatic", args.config.as_deref(), ac.error_model.map(|e| e.seed).or(seed), threads)?;
    Ok(())
}

fn cost(args: &CommonArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = args.load()?;
    let hw = cfg.hardware_model()?;
    let (target, options) = resolve_target(&cfg, &hw)?;
    let t = cfg.section(&cfg.trotter, "trotter")?;
    let mut text = String::new();
    let n = target.n_qubits();
    let gamma = hw.gamma();
    for a in 0..n {
        for b in a + 1..n {
            let m = CoeffMatrix::of_pair(&target, a, b);
            if m.max_abs() == 0.0 {
                continue;
            }
            let homogeneous = match homogeneous_feasibility(&m, gamma) {
                Ok(f) if f.feasible => format!("homogeneous c = {}", f.time_cost.unwrap_or(0.0)),
                Ok(f) => format!("homogeneous infeasible, eigenvalues {:?}", f.eigenvalues),
                Err(e) => format!("homogeneous infeasible, {e}"),
            };
            text.push_str(&format!("pair {a}-{b}: {homogeneous}; inhomogeneous c = {}\n", inhomogeneous_cost(&m, gamma)?));
        }
    }
    let plan = plan_cycle(&target, &hw, &options)?;
    let report = CostReport::new(plan.time_cost(), plan.control_steps(), t.t_prime, t.epsilon)?;
    say(out, &text)?;
    say(out, &write_cost(&report))?;
    let mut w = ArtifactWriter::new(&args.out_dir)?;
    w.write("cost.txt", write_cost(&report).as_bytes())?;
    w.write("pairs.txt", text.as_bytes())?;
    if args.format == OutputFormat::Json {
        let doc = json!({
            "time_cost": report.time_cost, "n": report.n, "l": report.l, "step_t": report.step_t,
            "chi": report.chi, "epsilon": report.epsilon, "t_prime": report.t_prime,
        });
        w.write("cost.json", &json_bytes(&doc)?)?;
    }
    w.finish("cost", args.config.as_deref(), None, 1)?;
    Ok(())
}

fn crosstalk(args: &CommonArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = args.load()?;
    let spec = cfg.section(&cfg.crosstalk, "crosstalk")?;
    let mut model = match (&spec.positions, spec.n) {
        (Some(p), _) => TrapArrayModel::new(p.clone())?,
        (None, Some(n)) => TrapArrayModel::chain(n)?,
        (None, None) => return Err(CliError::Usage("[crosstalk] needs `positions` or `n`".into())),
    };
    if let Some(t) = spec.threshold {
        model = model.with_threshold(t);
    }
    if let Some(k) = spec.kappa {
        model = model.with_kappa(k);
    }
    let report = crosstalk_report(&model, &spec.groups)?;
    let mut w = ArtifactWriter::new(&args.out_dir)?;
    let rows: Vec<Vec<Cell>> = report
        .pairings
        .iter()
        .map(|p| vec![Cell::Int(p.first as u64), Cell::Int(p.second as u64), Cell::Num(p.ratio)])
        .collect();
    table(&mut w, args.format, "crosstalk", &["first", "second", "ratio"], &rows)?;
    for p in &report.pairings {
        say(out, &format!("groups {} and {}: ratio {:e}\n", p.first, p.second, p.ratio))?;
    }
    let verdict = if report.concurrent { "concurrent" } else { "must be serialized" };
    say(out, &format!("max ratio {:e}, threshold {:e}: {verdict}\n", report.max_ratio, report.threshold))?;
    w.finish("crosstalk", args.config.as_deref(), None, 1)?;
    Ok(())
}
