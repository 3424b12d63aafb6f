//! Command-line surface: `collreg verify|simulate|classify|levelset|period`.
//!
//! `simulate` reads versioned JSON run configurations:
//!
//! ```json
//! {
//!   "schema": 1,
//!   "problem": "reduced",
//!   "N": 2, "m": 1e-3, "epsilon": 0.0, "h": -1.0,
//!   "initial": { "chart": "regularized", "state": [1.0, 0.5] },
//!   "integrator": { "method": "gauss4", "step": 1e-3 },
//!   "span": 100.0,
//!   "outputs": { "trajectory": "traj.csv", "events": "events.json", "summary": "summary.json" }
//! }
//! ```
//!
//! Problems and their state vectors:
//!
//! | problem    | chart         | state                  | CSV header                     |
//! |------------|---------------|------------------------|--------------------------------|
//! | `sitnikov` | `regularized` | `Q1, Q2, P1, P2`       | `tau,t,Q1,Q2,P1,P2,gamma`      |
//! | `sitnikov` | `physical`    | `q1, q2, p1, p2`       | `t,q1,q2,p1,p2,H`              |
//! | `reduced`  | `regularized` | `Q1, P1`               | `tau,t,Q1,P1,gamma`            |
//! | `kepler1d` | `regularized` | `u, v`                 | `tau,t,u,v,gamma`              |
//!
//! Initial states are moved onto the energy level `h` by solving for the
//! magnitude of the first momentum (sign kept). Relative output paths are
//! resolved against the directory of the config file.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify, level_set_sample, period_report, LevelGrid, DEFAULT_PARABOLIC_BAND};
use crate::config::{MassParams, RingConfig};
use crate::error::{Error, Result};
use crate::integrators::{
    integrate, EventKind, Flow, IntegrateOptions, IntegratorConfig, Kepler1dFlow, PhysicalFlow, ReducedFlow,
    RegularizedFlow, Trajectory, DEFAULT_GUARD_DISTANCE,
};
use crate::output::{write_points_csv, write_trajectory_csv, ClockColumns};
use crate::physical::{EnergyLevel, PhysState};
use crate::regularized::{
    chart_to_physical, chart_to_regularized, project_reduced, project_to_level, ReducedState, RegState,
};
use crate::verify::{run_checks, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status for failed checks or failed integrations.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for invalid arguments or configurations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Sitnikov,
    Reduced,
    Kepler1d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Physical,
    Regularized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub chart: Chart,
    pub state: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub trajectory: PathBuf,
    #[serde(default)]
    pub events: Option<PathBuf>,
    #[serde(default)]
    pub summary: Option<PathBuf>,
}

fn default_n() -> usize {
    3
}

fn default_mu_grav() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    pub problem: Problem,
    #[serde(rename = "N", default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub m: f64,
    #[serde(default)]
    pub epsilon: f64,
    pub h: f64,
    /// Gravitational parameter of the `kepler1d` problem.
    #[serde(default = "default_mu_grav")]
    pub mu_grav: f64,
    pub initial: InitialState,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    /// Length of the run in the independent variable (`τ`, or `t` for the
    /// physical chart).
    pub span: f64,
    /// Stop once a secondary is this far from the ring plane.
    #[serde(default)]
    pub escape_threshold: Option<f64>,
    #[serde(default)]
    pub stop_after_collisions: Option<usize>,
    pub outputs: Outputs,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::config("schema", format!("unsupported version {}", self.schema)));
        }
        let want = match (self.problem, self.initial.chart) {
            (Problem::Sitnikov, _) => 4,
            (Problem::Reduced, Chart::Regularized) | (Problem::Kepler1d, Chart::Regularized) => 2,
            (p, Chart::Physical) => {
                return Err(Error::config(
                    "initial.chart",
                    format!("problem {p:?} is integrated in the regularized chart only"),
                ))
            }
        };
        if self.initial.state.len() != want {
            return Err(Error::config(
                "initial.state",
                format!("expected {want} components, got {}", self.initial.state.len()),
            ));
        }
        if self.initial.state.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("initial.state", "components must be finite"));
        }
        if self.problem == Problem::Reduced && self.epsilon != 0.0 {
            return Err(Error::config("epsilon", "the reduced problem needs equal masses (epsilon = 0)"));
        }
        if self.problem == Problem::Kepler1d && !(self.mu_grav > 0.0) {
            return Err(Error::config("mu_grav", "must be positive"));
        }
        if !(self.span >= 0.0) {
            return Err(Error::config("span", "must be non-negative"));
        }
        if self.escape_threshold.is_some_and(|e| !(e > 0.0)) {
            return Err(Error::config("escape_threshold", "must be positive"));
        }
        self.integrator.validate()?;
        if self.problem != Problem::Kepler1d {
            MassParams::new(self.m, self.epsilon).map_err(|e| Error::config("m/epsilon", e.to_string()))?;
            RingConfig::new(self.n).map_err(|e| Error::config("N", e.to_string()))?;
        }
        Ok(())
    }
}

/// Run statistics written next to the trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub problem: Problem,
    pub chart: Chart,
    pub h: f64,
    pub steps: usize,
    pub samples: usize,
    pub collisions: usize,
    /// `Γ` (or `H − h`) at the projected initial state.
    pub initial_invariant: f64,
    /// Re-evaluated at the final sample.
    pub final_invariant: f64,
    /// Largest `|Γ|` (or `|H − h|`) over all steps.
    pub max_invariant_drift: f64,
    pub terminated_by: Option<EventKind>,
    /// Physical speed of the secondary farthest from the ring plane at the
    /// final sample.
    pub terminal_speed: Option<f64>,
    pub final_tau: f64,
    pub final_t: f64,
    pub wall_time_s: f64,
    pub error: Option<String>,
}

/// A finished (possibly aborted) run.
#[derive(Debug)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub summary: Summary,
    /// Set when the integration stopped on an error; `trajectory` then
    /// holds everything up to the last good sample.
    pub error: Option<Error>,
}

struct Prepared<F: Flow> {
    flow: F,
    y0: Vec<f64>,
    clocks: ClockColumns,
    diag_name: &'static str,
    diag_offset: f64,
    speed: fn(&F, &[f64]) -> Option<f64>,
    guard: Option<f64>,
}

fn farthest_speed(x: &PhysState, params: &MassParams) -> f64 {
    if x.q1.abs() >= x.q2.abs() {
        (x.p1 / params.alpha).abs()
    } else {
        (x.p2 / params.beta).abs()
    }
}

fn execute<F: Flow>(cfg: &RunConfig, chart: Chart, prep: &Prepared<F>) -> RunOutcome {
    let start = Instant::now();
    let opts = IntegrateOptions {
        escape_threshold: cfg.escape_threshold,
        stop_after_collisions: cfg.stop_after_collisions,
        guard_distance: prep.guard,
        ..Default::default()
    };
    let (trajectory, error) = match integrate(&prep.flow, &prep.y0, cfg.span, &cfg.integrator, &opts) {
        Ok(t) => (t, None),
        Err(aborted) => (*aborted.partial, Some(aborted.error)),
    };
    let last = trajectory.last();
    let invariant = |y: &[f64]| prep.flow.invariant(y).unwrap_or(f64::NAN);
    let summary = Summary {
        problem: cfg.problem,
        chart,
        h: cfg.h,
        steps: trajectory.metadata.steps,
        samples: trajectory.samples.len(),
        collisions: trajectory.collision_count(),
        initial_invariant: invariant(&prep.y0),
        final_invariant: invariant(&last.state),
        max_invariant_drift: trajectory.metadata.max_invariant.unwrap_or(f64::NAN),
        terminated_by: trajectory.terminated_by(),
        terminal_speed: (prep.speed)(&prep.flow, &last.state),
        final_tau: last.tau,
        final_t: last.t,
        wall_time_s: start.elapsed().as_secs_f64(),
        error: error.as_ref().map(ToString::to_string),
    };
    RunOutcome {
        trajectory,
        summary,
        error,
    }
}

/// Writes the trajectory CSV, events JSON and summary JSON of `outcome`.
fn write_outputs<F: Flow>(prep: &Prepared<F>, cfg: &RunConfig, outcome: &RunOutcome, base: &Path) -> Result<()> {
    let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
    let mut csv = BufWriter::new(File::create(resolve(&cfg.outputs.trajectory))?);
    write_trajectory_csv(&mut csv, &outcome.trajectory, prep.clocks, prep.diag_name, |y| {
        prep.flow.invariant(y).unwrap_or(f64::NAN) + prep.diag_offset
    })?;
    csv.flush()?;
    if let Some(path) = &cfg.outputs.events {
        let mut w = BufWriter::new(File::create(resolve(path))?);
        serde_json::to_writer_pretty(&mut w, &outcome.trajectory.events)?;
        w.write_all(b"\n")?;
    }
    if let Some(path) = &cfg.outputs.summary {
        let mut w = BufWriter::new(File::create(resolve(path))?);
        serde_json::to_writer_pretty(&mut w, &outcome.summary)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

fn run_prepared<F: Flow>(cfg: &RunConfig, chart: Chart, prep: Prepared<F>, base: Option<&Path>) -> Result<RunOutcome> {
    let outcome = execute(cfg, chart, &prep);
    if let Some(base) = base {
        write_outputs(&prep, cfg, &outcome, base)?;
    }
    Ok(outcome)
}

/// Run `cfg`. With `base` set, output files are written (relative paths
/// resolved against it) even when the integration aborts. Setup problems,
/// such as an initial state with no point on the energy level, are
/// returned as errors; integration failures are reported in the outcome.
pub fn simulate(cfg: &RunConfig, base: Option<&Path>) -> Result<RunOutcome> {
    cfg.validate()?;
    let x = &cfg.initial.state;
    let level = EnergyLevel(cfg.h);
    match (cfg.problem, cfg.initial.chart) {
        (Problem::Sitnikov, Chart::Regularized) => {
            let (params, ring) = (MassParams::new(cfg.m, cfg.epsilon)?, RingConfig::new(cfg.n)?);
            let z = project_to_level(&RegState::from_phase(x), level, &params, &ring)?;
            let prep = Prepared {
                flow: RegularizedFlow::new(params, ring, cfg.h),
                y0: z.phase().to_vec(),
                clocks: ClockColumns::Both,
                diag_name: "gamma",
                diag_offset: 0.0,
                speed: |f: &RegularizedFlow, y: &[f64]| {
                    chart_to_physical(&RegState::from_phase(y), &f.params)
                        .ok()
                        .map(|x| farthest_speed(&x, &f.params))
                },
                guard: None,
            };
            run_prepared(cfg, Chart::Regularized, prep, base)
        }
        (Problem::Sitnikov, Chart::Physical) => {
            let (params, ring) = (MassParams::new(cfg.m, cfg.epsilon)?, RingConfig::new(cfg.n)?);
            let z = chart_to_regularized(&PhysState::from_slice(x), &params)?;
            let start = chart_to_physical(&project_to_level(&z, level, &params, &ring)?, &params)?;
            let prep = Prepared {
                flow: PhysicalFlow::new(params, ring, cfg.h),
                y0: start.to_array().to_vec(),
                clocks: ClockColumns::Physical,
                diag_name: "H",
                diag_offset: cfg.h,
                speed: |f: &PhysicalFlow, y: &[f64]| Some(farthest_speed(&PhysState::from_slice(y), &f.params)),
                guard: Some(DEFAULT_GUARD_DISTANCE),
            };
            run_prepared(cfg, Chart::Physical, prep, base)
        }
        (Problem::Reduced, _) => {
            let ring = RingConfig::new(cfg.n)?;
            let s = project_reduced(&ReducedState::new(x[0], x[1], &ring), level, cfg.m)?;
            let prep = Prepared {
                flow: ReducedFlow::new(&ring, cfg.h, cfg.m),
                y0: vec![s.q1, s.p1],
                clocks: ClockColumns::Both,
                diag_name: "gamma",
                diag_offset: 0.0,
                // q = Q1²/4 and p = P1/Q1 for the symmetric pair.
                speed: |_: &ReducedFlow, y: &[f64]| (y[0] != 0.0).then(|| (y[1] / y[0]).abs()),
                guard: None,
            };
            run_prepared(cfg, Chart::Regularized, prep, base)
        }
        (Problem::Kepler1d, _) => {
            let flow = Kepler1dFlow {
                mu_grav: cfg.mu_grav,
                h: cfg.h,
            };
            let v2 = 4.0 * cfg.mu_grav + 2.0 * cfg.h * x[0] * x[0];
            if v2 < 0.0 {
                return Err(Error::Domain(format!(
                    "u = {} lies beyond the turning point of the level h = {}",
                    x[0], cfg.h
                )));
            }
            let v = if x[1] < 0.0 { -v2.sqrt() } else { v2.sqrt() };
            let prep = Prepared {
                flow,
                y0: vec![x[0], v],
                clocks: ClockColumns::Both,
                diag_name: "gamma",
                diag_offset: 0.0,
                speed: |_: &Kepler1dFlow, y: &[f64]| (y[0] != 0.0).then(|| (y[1] / y[0]).abs()),
                guard: None,
            };
            run_prepared(cfg, Chart::Regularized, prep, base)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "collreg", version, about = "Regularized simulation of binary collisions in the circular N+2 Sitnikov problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in invariant suite and print a JSON report.
    Verify {
        /// Only run checks whose category or name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Replace the reduced field by a sign-flipped mutant (the suite
        /// must then fail).
        #[arg(long)]
        inject_sign_flip: bool,
    },
    /// Integrate one or more JSON run configurations.
    Simulate {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Run the configurations in parallel (COLLREG_THREADS limits the
        /// worker count).
        #[arg(long)]
        sweep: bool,
    },
    /// Classify the symmetric motion at energy h.
    ///
    /// |h| <= tol counts as parabolic: h = 0 has measure zero, so an exact
    /// comparison would never report it for computed energies.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value_t = DEFAULT_PARABOLIC_BAND)]
        tol: f64,
    },
    /// Sample the level curve of the reduced Hamiltonian as `Q1,P1` CSV.
    Levelset {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long)]
        m: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        q1_max: f64,
        #[arg(long, default_value_t = 3.0)]
        p1_max: f64,
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Period of the bounded symmetric collision orbit by quadrature and
    /// by integration, as JSON.
    Period {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long)]
        m: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_to(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
        }
    }
    Ok(())
}

fn cmd_verify(filter: Option<String>, inject_sign_flip: bool) -> Result<i32> {
    let report = run_checks(&VerifyOptions {
        filter,
        inject_sign_flip,
    });
    let text = serde_json::to_string_pretty(&report)?;
    match write_to(None, |w| writeln!(w, "{text}")) {
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => {}
        other => other?,
    }
    if report.all_passed() {
        return Ok(0);
    }
    for c in report.failures().take(10) {
        eprintln!(
            "FAIL {}/{}: measured {:e} > threshold {:e}",
            c.category, c.name, c.measured, c.threshold
        );
    }
    Ok(EXIT_FAILURE)
}

fn simulate_file(path: &Path) -> Result<RunOutcome> {
    let cfg = RunConfig::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    simulate(&cfg, Some(base))
}

fn report_run(path: &Path, result: &Result<RunOutcome>) -> bool {
    match result {
        Ok(o) if o.error.is_none() => {
            eprintln!(
                "{}: {} steps, {} collisions, max invariant drift {:e}",
                path.display(),
                o.summary.steps,
                o.summary.collisions,
                o.summary.max_invariant_drift
            );
            true
        }
        Ok(o) => {
            eprintln!(
                "{}: integration aborted after {} steps: {}",
                path.display(),
                o.summary.steps,
                o.error.as_ref().map(ToString::to_string).unwrap_or_default()
            );
            false
        }
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            false
        }
    }
}

fn sweep_threads() -> Result<Option<usize>> {
    match std::env::var("COLLREG_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Error::config("COLLREG_THREADS", format!("expected a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn cmd_simulate(configs: &[PathBuf], sweep: bool) -> Result<i32> {
    let results: Vec<Result<RunOutcome>> = if sweep {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = sweep_threads()? {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::config("COLLREG_THREADS", e.to_string()))?;
        pool.install(|| configs.par_iter().map(|p| simulate_file(p)).collect())
    } else {
        configs.iter().map(|p| simulate_file(p)).collect()
    };
    let mut code = 0;
    for (path, result) in configs.iter().zip(&results) {
        if !report_run(path, result) {
            code = match result {
                Err(Error::Config { .. } | Error::Json(_)) => code.max(EXIT_USAGE),
                _ => code.max(EXIT_FAILURE),
            };
        }
    }
    Ok(code)
}

fn cmd_levelset(h: f64, m: f64, n: usize, grid: LevelGrid, out: Option<&Path>) -> Result<i32> {
    let ring = RingConfig::new(n)?;
    let points = level_set_sample(h, m, ring.reduced_constant(), &grid)?;
    write_to(out, |w| write_points_csv(w, "Q1,P1", &points))?;
    Ok(0)
}

fn cmd_period(h: f64, m: f64, n: usize, out: Option<&Path>) -> Result<i32> {
    let report = period_report(h, m, n)?;
    let text = serde_json::to_string_pretty(&report)?;
    write_to(out, |w| writeln!(w, "{text}"))?;
    Ok(0)
}

/// Entry point of the `collreg` binary; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Verify {
            filter,
            inject_sign_flip,
        } => cmd_verify(filter, inject_sign_flip),
        Command::Simulate { configs, sweep } => cmd_simulate(&configs, sweep),
        Command::Classify { h, tol } => write_to(None, |w| writeln!(w, "{}", classify(h, tol).kind)).map(|_| 0),
        Command::Levelset {
            h,
            m,
            n,
            q1_max,
            p1_max,
            resolution,
            out,
        } => {
            let grid = LevelGrid {
                q1_bound: q1_max,
                p1_bound: p1_max,
                resolution,
            };
            cmd_levelset(h, m, n, grid, out.as_deref())
        }
        Command::Period { h, m, n, out } => cmd_period(h, m, n, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        // A closed downstream pipe is not an error of ours.
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config { .. } | Error::Json(_) | Error::Parameter { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced_config() -> String {
        r#"{
            "schema": 1, "problem": "reduced", "N": 2, "m": 1e-3, "h": -1.0,
            "initial": {"chart": "regularized", "state": [1.0, 0.5]},
            "integrator": {"method": "gauss4", "step": 1e-2},
            "span": 20.0,
            "outputs": {"trajectory": "t.csv"}
        }"#
        .to_string()
    }

    #[test]
    fn parses_and_projects() {
        let cfg = RunConfig::from_json(&reduced_config()).unwrap();
        let out = simulate(&cfg, None).unwrap();
        assert!(out.error.is_none());
        assert!(out.summary.initial_invariant.abs() < 1e-10);
        assert!(out.summary.collisions >= 1);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let bad = reduced_config().replace("\"schema\": 1", "\"schema\": 2");
        let err = RunConfig::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("schema"), "{err}");
        let bad = reduced_config().replace("\"span\": 20.0,", "");
        let err = RunConfig::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("span"), "{err}");
        let bad = reduced_config().replace("[1.0, 0.5]", "[1.0, 0.5, 0.0]");
        let err = RunConfig::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("initial.state"), "{err}");
        let bad = reduced_config().replace("\"chart\": \"regularized\"", "\"chart\": \"physical\"");
        assert!(RunConfig::from_json(&bad).is_err());
    }

    #[test]
    fn physical_chart_needs_ordered_positions() {
        let text = r#"{
            "schema": 1, "problem": "sitnikov", "N": 3, "m": 1e-3, "h": -1.0,
            "initial": {"chart": "physical", "state": [-0.5, 0.5, 0.0, 0.0]},
            "span": 1.0, "outputs": {"trajectory": "t.csv"}
        }"#;
        let cfg = RunConfig::from_json(text).unwrap();
        assert!(simulate(&cfg, None).is_err());
    }

    #[test]
    fn classify_parses_negative_values() {
        let cli = Cli::try_parse_from(["collreg", "classify", "--h", "-0.5"]).unwrap();
        assert!(matches!(cli.command, Command::Classify { h, .. } if h == -0.5));
    }
}
