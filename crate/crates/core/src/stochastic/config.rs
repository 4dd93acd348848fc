use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Chart;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Euler,
    Wos,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euler" => Ok(Method::Euler),
            "wos" => Ok(Method::Wos),
            _ => Err(Error::Parse { token: s.to_string(), reason: "expected `euler` or `wos`".into() }),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Euler => "euler",
            Method::Wos => "wos",
        })
    }
}

pub const MAX_DT: f64 = 1e-2;
pub const MAX_WOS_EPS: f64 = 1e-2;
pub const DEFAULT_T_MAX: f64 = 100.0;
pub const DEFAULT_MAX_JUMPS: u64 = 1_000_000;

/// Monte Carlo settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub paths: u64,
    /// Euler time step.
    pub dt: f64,
    pub seed: u64,
    /// Paths still running at `t_max` are censored.
    pub t_max: f64,
    pub method: Method,
    /// Walk-on-Spheres stops once the boundary is closer than this.
    pub wos_eps: f64,
    /// Walk-on-Spheres paths are censored after this many jumps.
    pub max_jumps: u64,
    /// Cartesian-type chart for Euler steps; defaults to the Euclidean plane
    /// or the half-plane model.
    pub chart: Option<Chart>,
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub workers: Option<usize>,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            paths: 100_000,
            dt: 1e-4,
            seed: 0,
            t_max: DEFAULT_T_MAX,
            method: Method::Euler,
            wos_eps: 1e-4,
            max_jumps: DEFAULT_MAX_JUMPS,
            chart: None,
            workers: None,
        }
    }
}

impl McConfig {
    pub fn euler(paths: u64, dt: f64, seed: u64) -> Self {
        McConfig { paths, dt, seed, method: Method::Euler, ..Default::default() }
    }

    pub fn wos(paths: u64, wos_eps: f64, seed: u64) -> Self {
        McConfig { paths, wos_eps, seed, method: Method::Wos, ..Default::default() }
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = Some(chart);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.paths < 1 {
            return bad("paths must be at least 1".into());
        }
        if !(self.dt > 0.0 && self.dt <= MAX_DT) {
            return bad(format!("dt must lie in (0, {MAX_DT}], got {}", self.dt));
        }
        if !(self.wos_eps > 0.0 && self.wos_eps <= MAX_WOS_EPS) {
            return bad(format!("wos_eps must lie in (0, {MAX_WOS_EPS}], got {}", self.wos_eps));
        }
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return bad(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.max_jumps < 1 {
            return bad("max_jumps must be at least 1".into());
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }
}

/// Sample statistics of a simulation run. Censored paths contribute `t_max`
/// to the mean, so a run with `censored_fraction > 0` is a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub censored_fraction: f64,
}

impl McEstimate {
    pub fn is_uncensored(&self) -> bool {
        self.censored_fraction == 0.0
    }

    /// `|mean − target| ≤ k·stderr` and nothing was censored.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        self.is_uncensored() && (self.mean - target).abs() <= k * self.stderr
    }
}
