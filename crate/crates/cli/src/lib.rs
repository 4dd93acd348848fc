//! Command-line front end: `eval`, `simulate`, `solve`, `validate`,
//! `rigidity` and `domains list`.
//!
//! Exit codes: 0 success, 1 validation failure or other error, 2 parse
//! error, 3 point outside the domain, 4 missing truncation, 5 infinite or
//! unbounded domain.

mod config;
mod format;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use firstexit::closed_form::{exit_time, family_term, torsional_rigidity, ExitTime, FamilyConstants};
use firstexit::pde_oracle::{solve_grid, solve_grid_with, BBox, Solver, Truncation};
use firstexit::stochastic::{simulate_exit, McConfig, Method, DEFAULT_MAX_JUMPS, DEFAULT_T_MAX};
use firstexit::{Chart, DomainKind, DomainSpec, Error};

pub use format::g9;
pub use report::{ReportRow, RunReport};

pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OUTSIDE: i32 = 3;
pub const EXIT_MISSING_TRUNCATION: i32 = 4;
pub const EXIT_INFINITE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "firstexit", version, about = "Expected first exit times of planar Brownian motion")]
pub struct Cli {
    /// JSON object whose keys supply flags of the chosen command; explicit flags win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the closed-form expected exit time
    Eval(EvalArgs),
    /// Estimate the expected exit time by Monte Carlo
    Simulate(SimulateArgs),
    /// Solve the Saint-Venant problem on a grid and write CSV plus a JSON sidecar
    Solve(SolveArgs),
    /// Compare closed form, Monte Carlo and grid at a list of points
    Validate(ValidateArgs),
    /// Torsional rigidity, the integral of the exit time over the domain
    Rigidity(RigidityArgs),
    /// Domain catalog
    Domains {
        #[command(subcommand)]
        action: DomainsAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum DomainsAction {
    /// List domain kinds, their parameters and an example spec
    List,
}

fn parse_domain(s: &str) -> Result<DomainSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_chart(s: &str) -> Result<Chart, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    format::parse_pair(s).map_err(|e| e.to_string())
}

fn parse_truncation(s: &str) -> Result<Truncation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bbox(s: &str) -> Result<BBox, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Result<Vec<f64>, _> = parts.iter().map(|t| t.trim().parse::<f64>()).collect();
    match nums {
        Ok(v) if v.len() == 4 => BBox::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string()),
        _ => Err(format!("cannot parse `{s}`: expected umin,umax,vmin,vmax")),
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_solver(s: &str) -> Result<Solver, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// Domain spec `kind:key=value,...`; see `domains list`
    #[arg(long, value_parser = parse_domain, value_name = "SPEC")]
    pub domain: DomainSpec,

    /// Chart the points are given in [default: the domain's native chart]
    #[arg(long, value_parser = parse_chart)]
    pub chart: Option<Chart>,
}

impl DomainArgs {
    fn chart(&self) -> Chart {
        self.chart.unwrap_or_else(|| self.domain.native_chart())
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    /// Point `u,v`; repeatable
    #[arg(long = "point", value_parser = parse_pair, allow_hyphen_values = true, value_name = "U,V")]
    pub points: Vec<(f64, f64)>,

    /// File with one `u,v` per line (`#` starts a comment)
    #[arg(long = "points", value_name = "FILE")]
    pub points_file: Option<PathBuf>,

    /// Family constant C (parabola and sector families)
    #[arg(long)]
    pub c_inf: Option<f64>,

    /// Heat-kernel atom `C,t`; repeatable
    #[arg(long = "atom", value_parser = parse_pair, allow_hyphen_values = true, value_name = "C,T")]
    pub atoms: Vec<(f64, f64)>,

    /// Tube family coefficient of r^e
    #[arg(long)]
    pub tube_a: Option<f64>,

    /// Tube family coefficient of r^-e
    #[arg(long)]
    pub tube_b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    /// Number of paths [default: 100000 for simulate, 10000 for validate]
    #[arg(long)]
    pub paths: Option<u64>,

    /// Euler time step
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// euler or wos [default: euler for simulate, wos for validate]
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,

    /// Censoring time
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,

    /// Walk-on-Spheres capture shell
    #[arg(long, default_value_t = 1e-4)]
    pub wos_eps: f64,

    /// Walk-on-Spheres jump cap
    #[arg(long, default_value_t = DEFAULT_MAX_JUMPS)]
    pub max_jumps: u64,

    /// Chart for Euler steps: euclidean, half-plane, or unit-disk for hyperbolic disks
    #[arg(long, value_parser = parse_chart)]
    pub sim_chart: Option<Chart>,

    /// Worker threads; the result does not depend on it
    #[arg(long)]
    pub workers: Option<usize>,
}

impl McArgs {
    fn config(&self, default_method: Method, default_paths: u64) -> McConfig {
        McConfig {
            paths: self.paths.unwrap_or(default_paths),
            dt: self.dt,
            seed: self.seed,
            t_max: self.t_max,
            method: self.method.unwrap_or(default_method),
            wos_eps: self.wos_eps,
            max_jumps: self.max_jumps,
            chart: self.sim_chart,
            workers: self.workers,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    /// Start point `u,v`
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, value_name = "U,V")]
    pub point: (f64, f64),

    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    /// Grid step
    #[arg(long)]
    pub h: f64,

    /// Grid box `umin,umax,vmin,vmax` in the grid chart [default: fitted to the domain]
    #[arg(long, value_parser = parse_bbox, allow_hyphen_values = true)]
    pub bbox: Option<BBox>,

    /// `box:umin=..,umax=..,vmin=..,vmax=..`, `radius:r=..` or `exhaustion:n=..`
    #[arg(long, value_parser = parse_truncation)]
    pub truncation: Option<Truncation>,

    /// CSV output path; the sidecar goes next to it with a .json extension
    #[arg(long)]
    pub out: PathBuf,

    /// bicgstab or sor
    #[arg(long, value_parser = parse_solver, default_value = "bicgstab")]
    pub solver: Solver,

    /// Print the grid value at `u,v`; repeatable
    #[arg(long = "probe", value_parser = parse_pair, allow_hyphen_values = true, value_name = "U,V")]
    pub probes: Vec<(f64, f64)>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    /// File with one `u,v` per line (`#` starts a comment)
    #[arg(long = "points", value_name = "FILE")]
    pub points_file: PathBuf,

    #[command(flatten)]
    pub mc: McArgs,

    /// Grid step
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,

    /// Allowed |grid − closed form|
    #[arg(long, default_value_t = 5e-3)]
    pub grid_tol: f64,

    /// Required for unbounded domains
    #[arg(long, value_parser = parse_truncation)]
    pub truncation: Option<Truncation>,

    /// Write the full report as JSON
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RigidityArgs {
    #[arg(long, value_parser = parse_domain, value_name = "SPEC")]
    pub domain: DomainSpec,
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidParameter { .. } | Error::Config(_) | Error::OutOfChart { .. } => {
            EXIT_PARSE
        }
        Error::OutsideDomain { .. } => EXIT_OUTSIDE,
        Error::MissingTruncation(_) => EXIT_MISSING_TRUNCATION,
        Error::InfiniteOrUnbounded(_) => EXIT_INFINITE,
        _ => 1,
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit code.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match config::config_path(&args) {
        Some(path) if !config::is_domains_command(&args) => match config::merge(&args, Path::new(&path)) {
            Ok(merged) => merged,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        },
        _ => args,
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => return clap_failure(e, out, err),
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn clap_failure(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = e.render().to_string();
    if e.use_stderr() {
        let _ = write!(err, "{text}");
    } else {
        let _ = write!(out, "{text}");
    }
    e.exit_code()
}

fn dispatch(command: Command, out: &mut dyn Write) -> firstexit::Result<i32> {
    match command {
        Command::Eval(a) => eval(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Validate(a) => validate(a, out),
        Command::Rigidity(a) => {
            let v = torsional_rigidity(&a.domain)?;
            writeln!(out, "{}", g9(v))?;
            Ok(0)
        }
        Command::Domains { action: DomainsAction::List } => {
            for kind in DomainKind::ALL {
                let (required, optional) = kind.keys();
                writeln!(
                    out,
                    "{:<18} required=[{}] optional=[{}] example={}",
                    kind.tag(),
                    required.join(","),
                    optional.join(","),
                    kind.example()
                )?;
            }
            Ok(0)
        }
    }
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> firstexit::Result<i32> {
    let mut pairs = a.points.clone();
    if let Some(path) = &a.points_file {
        pairs.extend(format::parse_points_file(&std::fs::read_to_string(path)?)?);
    }
    if pairs.is_empty() {
        return Err(Error::Parse { token: "--point".into(), reason: "give at least one point".into() });
    }
    let given = a.c_inf.is_some() || !a.atoms.is_empty() || a.tube_a.is_some() || a.tube_b.is_some();
    let family = given.then(|| FamilyConstants {
        c_inf: a.c_inf.unwrap_or(0.0),
        atoms: a.atoms.clone(),
        a: a.tube_a.unwrap_or(0.0),
        b: a.tube_b.unwrap_or(0.0),
    });
    let chart = a.domain.chart();
    let domain = a.domain.domain;
    for pair in pairs {
        let pt = format::point(pair, chart)?;
        let mut value = exit_time(&domain, pt)?;
        if let (Some(k), ExitTime::Finite(v)) = (&family, value) {
            value = ExitTime::Finite(v + family_term(&domain, pt, k)?);
        }
        writeln!(out, "{} {} {}", g9(pair.0), g9(pair.1), format::exit_value(value))?;
    }
    Ok(0)
}

#[derive(serde::Serialize)]
struct SimulateOutput {
    mean: f64,
    stderr: f64,
    n: u64,
    censored_fraction: f64,
    seed: u64,
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> firstexit::Result<i32> {
    let pt = format::point(a.point, a.domain.chart())?;
    let cfg = a.mc.config(Method::Euler, 100_000);
    let est = simulate_exit(&a.domain.domain, pt, &cfg)?;
    let json = SimulateOutput {
        mean: est.mean,
        stderr: est.stderr,
        n: est.n,
        censored_fraction: est.censored_fraction,
        seed: cfg.seed,
    };
    writeln!(out, "{}", serde_json::to_string(&json).expect("estimate serializes"))?;
    Ok(0)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> firstexit::Result<i32> {
    let chart = a.domain.chart();
    let grid = solve_grid_with(&a.domain.domain, a.h, a.bbox, a.truncation, a.solver)?;
    grid.write(&a.out)?;
    for pair in a.probes {
        let v = grid.value_at(format::point(pair, chart)?)?;
        writeln!(out, "{} {} {}", g9(pair.0), g9(pair.1), g9(v))?;
    }
    Ok(0)
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> firstexit::Result<i32> {
    let domain = a.domain.domain;
    let chart = a.domain.chart();
    let pairs = format::parse_points_file(&std::fs::read_to_string(&a.points_file)?)?;
    if pairs.is_empty() {
        return Err(Error::Parse { token: a.points_file.display().to_string(), reason: "no points".into() });
    }
    if !domain.has_finite_exit_time() {
        return Err(Error::InfiniteOrUnbounded(domain.to_string()));
    }
    let cfg = a.mc.config(Method::Wos, 10_000);
    let grid = solve_grid(&domain, a.h, None, a.truncation)?;
    let mut rows = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let pt = format::point(pair, chart)?;
        let closed = match exit_time(&domain, pt)? {
            ExitTime::Finite(v) => v,
            ExitTime::Infinite => {
                return Err(Error::InfiniteOrUnbounded(domain.to_string()));
            }
        };
        let mc = simulate_exit(&domain, pt, &cfg)?;
        let grid_value = grid.value_at(pt)?;
        rows.push(ReportRow::new(pair, closed, mc, grid_value, a.grid_tol));
    }
    let report = RunReport::new(domain.to_string(), chart, a.grid_tol, rows);
    write!(out, "{}", report.table())?;
    if let Some(path) = &a.report {
        std::fs::write(path, serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(if report.all_pass { 0 } else { EXIT_VALIDATION_FAILED })
}
