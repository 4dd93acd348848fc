//! Monte Carlo estimates of expected exit times.
//!
//! Two estimators share one entry point, [`simulate_exit`]: Euler–Maruyama
//! paths in a conformal chart and Walk-on-Spheres. Each path draws from its
//! own counter-based stream ([`path_rng`]) and path times are reduced in
//! index order with compensated summation, so an estimate depends only on
//! the configuration, never on the number of worker threads.

mod config;
mod euler;
mod region;
mod rng;
mod wos;

use rayon::prelude::*;

pub use config::{McConfig, McEstimate, Method, DEFAULT_MAX_JUMPS, DEFAULT_T_MAX, MAX_DT, MAX_WOS_EPS};
pub use rng::{path_rng, PathRng};

use crate::error::{Error, Result};
use crate::geometry::{contains, convert, Chart, DomainSpec, Point2};
pub(crate) use region::SimRegion;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum PathOutcome {
    Exited(f64),
    Censored,
}

/// Estimate `E_start[T_D]` by simulation.
///
/// Infinite-exit domains are allowed; their estimates are censored means and
/// must be read together with `censored_fraction`.
pub fn simulate_exit(domain: &DomainSpec, start: Point2, cfg: &McConfig) -> Result<McEstimate> {
    domain.validate()?;
    cfg.validate()?;
    if !contains(domain, start)? {
        return Err(domain.outside(&start));
    }

    let run = || -> Result<Vec<PathOutcome>> {
        match cfg.method {
            Method::Euler => {
                let chart = cfg.chart.unwrap_or_else(|| SimRegion::default_chart(domain));
                let region = SimRegion::new(*domain, chart)?;
                let p = convert(start, region.chart())?;
                Ok((0..cfg.paths)
                    .into_par_iter()
                    .map(|i| euler::euler_path(&region, (p.u, p.v), cfg.dt, cfg.t_max, &mut path_rng(cfg.seed, i)))
                    .collect())
            }
            Method::Wos => {
                let hub = if domain.is_hyperbolic() { Chart::HalfPlaneCartesian } else { Chart::EuclideanCartesian };
                let p = convert(start, hub)?;
                Ok((0..cfg.paths)
                    .into_par_iter()
                    .map(|i| {
                        wos::wos_path(
                            domain,
                            (p.u, p.v),
                            cfg.wos_eps,
                            cfg.t_max,
                            cfg.max_jumps,
                            &mut path_rng(cfg.seed, i),
                        )
                    })
                    .collect())
            }
        }
    };

    let outcomes = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(summarize(&outcomes, cfg.t_max))
}

fn summarize(outcomes: &[PathOutcome], t_max: f64) -> McEstimate {
    let n = outcomes.len();
    let value = |o: &PathOutcome| match *o {
        PathOutcome::Exited(t) => t,
        PathOutcome::Censored => t_max,
    };
    let censored = outcomes.iter().filter(|o| matches!(o, PathOutcome::Censored)).count();
    let mean = neumaier_sum(outcomes.iter().map(value)) / n as f64;
    let var =
        if n > 1 { neumaier_sum(outcomes.iter().map(|o| (value(o) - mean).powi(2))) / (n - 1) as f64 } else { 0.0 };
    McEstimate { mean, stderr: (var / n as f64).sqrt(), n: n as u64, censored_fraction: censored as f64 / n as f64 }
}

/// Compensated (Kahan–Babuška–Neumaier) summation.
pub(crate) fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
