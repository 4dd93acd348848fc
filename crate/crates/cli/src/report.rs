//! Validation report: closed form, Monte Carlo and grid side by side.

use firstexit::stochastic::McEstimate;
use firstexit::Chart;
use serde::Serialize;

use crate::format::g9;

/// Monte Carlo agreement is judged in units of its standard error.
pub const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub u: f64,
    pub v: f64,
    pub closed: f64,
    pub mc: McEstimate,
    pub grid: f64,
    pub mc_discrepancy: f64,
    pub grid_discrepancy: f64,
    pub mc_pass: bool,
    pub grid_pass: bool,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(pair: (f64, f64), closed: f64, mc: McEstimate, grid: f64, grid_tol: f64) -> Self {
        let mc_discrepancy = (mc.mean - closed).abs();
        let grid_discrepancy = (grid - closed).abs();
        let mc_pass = mc_discrepancy <= MC_SIGMAS * mc.stderr;
        let grid_pass = grid_discrepancy <= grid_tol;
        ReportRow {
            u: pair.0,
            v: pair.1,
            closed,
            mc,
            grid,
            mc_discrepancy,
            grid_discrepancy,
            mc_pass,
            grid_pass,
            pass: mc_pass && grid_pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub domain: String,
    pub chart: String,
    pub grid_tol: f64,
    pub mc_sigmas: f64,
    pub rows: Vec<ReportRow>,
    pub all_pass: bool,
}

impl RunReport {
    pub fn new(domain: String, chart: Chart, grid_tol: f64, rows: Vec<ReportRow>) -> Self {
        let all_pass = rows.iter().all(|r| r.pass);
        RunReport { domain, chart: chart.name().to_string(), grid_tol, mc_sigmas: MC_SIGMAS, rows, all_pass }
    }

    pub fn table(&self) -> String {
        let mut s = format!("domain {}\n", self.domain);
        s.push_str(&format!(
            "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>6}\n",
            "u", "v", "closed", "mc", "stderr", "grid", "pass"
        ));
        for r in &self.rows {
            let flag = match (r.mc_pass, r.grid_pass) {
                (true, true) => "ok",
                (false, true) => "FAIL mc",
                (true, false) => "FAIL grid",
                (false, false) => "FAIL both",
            };
            s.push_str(&format!(
                "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>6}\n",
                g9(r.u),
                g9(r.v),
                g9(r.closed),
                g9(r.mc.mean),
                g9(r.mc.stderr),
                g9(r.grid),
                flag
            ));
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        s.push_str(&format!("{} of {} points pass\n", self.rows.len() - failed, self.rows.len()));
        s
    }
}
