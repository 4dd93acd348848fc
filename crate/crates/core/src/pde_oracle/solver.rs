//! Sparse linear algebra for the grid systems.
//!
//! Shortley–Weller rows are not symmetric, so the default solver is
//! BiCGSTAB preconditioned with a zero-fill incomplete LU factorization.
//! Successive over-relaxation is kept as a simple fallback.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1_000_000;
pub const SOR_OMEGA: f64 = 1.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    #[default]
    BiCgStab,
    Sor,
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bicgstab" => Ok(Solver::BiCgStab),
            "sor" => Ok(Solver::Sor),
            _ => Err(Error::Parse { token: s.into(), reason: "expected `bicgstab` or `sor`".into() }),
        }
    }
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Solver::BiCgStab => "bicgstab",
            Solver::Sor => "sor",
        })
    }
}

/// Compressed sparse rows with sorted columns and a stored diagonal.
#[derive(Debug, Clone)]
pub(crate) struct Csr {
    pub n: usize,
    pub start: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
    pub diag: Vec<usize>,
}

impl Csr {
    /// Rows given as `(column, value)` lists; each must contain its diagonal.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        let mut start = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut diag = Vec::with_capacity(n);
        start.push(0);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.sort_by_key(|&(j, _)| j);
            for (j, v) in row {
                if j == i {
                    diag.push(cols.len());
                }
                cols.push(j);
                vals.push(v);
            }
            start.push(cols.len());
            assert_eq!(diag.len(), i + 1, "row {i} has no diagonal entry");
        }
        Csr { n, start, cols, vals, diag }
    }

    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.start[i]..self.start[i + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            *yi = s;
        }
    }

    fn relative_residual(&self, x: &[f64], b: &[f64], bnorm: f64) -> f64 {
        let mut ax = vec![0.0; self.n];
        self.mul(x, &mut ax);
        norm(&ax.iter().zip(b).map(|(a, b)| b - a).collect::<Vec<_>>()) / bnorm
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Zero-fill incomplete LU: `L` unit lower and `U` upper share the pattern of `A`.
struct Ilu0 {
    lu: Csr,
}

impl Ilu0 {
    fn new(a: &Csr) -> Self {
        let mut lu = a.clone();
        for i in 0..lu.n {
            for kk in lu.start[i]..lu.diag[i] {
                let k = lu.cols[kk];
                lu.vals[kk] /= lu.vals[lu.diag[k]];
                let lik = lu.vals[kk];
                for jj in kk + 1..lu.start[i + 1] {
                    let j = lu.cols[jj];
                    let row_k = &lu.cols[lu.diag[k] + 1..lu.start[k + 1]];
                    if let Ok(pos) = row_k.binary_search(&j) {
                        let ukj = lu.vals[lu.diag[k] + 1 + pos];
                        lu.vals[jj] -= lik * ukj;
                    }
                }
            }
        }
        Ilu0 { lu }
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        let m = &self.lu;
        for i in 0..m.n {
            let mut s = r[i];
            for k in m.start[i]..m.diag[i] {
                s -= m.vals[k] * z[m.cols[k]];
            }
            z[i] = s;
        }
        for i in (0..m.n).rev() {
            let mut s = z[i];
            for k in m.diag[i] + 1..m.start[i + 1] {
                s -= m.vals[k] * z[m.cols[k]];
            }
            z[i] = s / m.vals[m.diag[i]];
        }
    }
}

/// Solve `A x = b`; returns `x` and the final relative residual.
pub(crate) fn solve(a: &Csr, b: &[f64], solver: Solver) -> Result<(Vec<f64>, f64)> {
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return Ok((vec![0.0; a.n], 0.0));
    }
    match solver {
        Solver::BiCgStab => bicgstab(a, b, bnorm),
        Solver::Sor => sor(a, b, bnorm),
    }
}

fn bicgstab(a: &Csr, b: &[f64], bnorm: f64) -> Result<(Vec<f64>, f64)> {
    let n = a.n;
    let m = Ilu0::new(a);
    let mut x = vec![0.0; n];
    let mut iterations = 0;
    let mut residual = 1.0;
    // Restart from the true residual whenever the recurrence stalls or drifts.
    while iterations < MAX_ITERATIONS {
        let mut r = b.to_vec();
        let mut ax = vec![0.0; n];
        a.mul(&x, &mut ax);
        r.iter_mut().zip(&ax).for_each(|(ri, axi)| *ri -= axi);
        residual = norm(&r) / bnorm;
        if residual <= RESIDUAL_TOL {
            return Ok((x, residual));
        }
        let r_hat = r.clone();
        let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
        let mut p = vec![0.0; n];
        let mut v = vec![0.0; n];
        let mut y = vec![0.0; n];
        let mut z = vec![0.0; n];
        let mut s = vec![0.0; n];
        let mut t = vec![0.0; n];
        let restart_at = iterations + 10_000;
        while iterations < MAX_ITERATIONS.min(restart_at) {
            iterations += 1;
            let rho_new = dot(&r_hat, &r);
            if rho_new == 0.0 || !rho_new.is_finite() {
                break;
            }
            let beta = (rho_new / rho) * (alpha / omega);
            for i in 0..n {
                p[i] = r[i] + beta * (p[i] - omega * v[i]);
            }
            m.apply(&p, &mut y);
            a.mul(&y, &mut v);
            let rv = dot(&r_hat, &v);
            if rv == 0.0 {
                break;
            }
            alpha = rho_new / rv;
            for i in 0..n {
                s[i] = r[i] - alpha * v[i];
            }
            if norm(&s) / bnorm <= 0.1 * RESIDUAL_TOL {
                x.iter_mut().zip(&y).for_each(|(xi, yi)| *xi += alpha * yi);
                break;
            }
            m.apply(&s, &mut z);
            a.mul(&z, &mut t);
            let tt = dot(&t, &t);
            if tt == 0.0 {
                break;
            }
            omega = dot(&t, &s) / tt;
            for i in 0..n {
                x[i] += alpha * y[i] + omega * z[i];
                r[i] = s[i] - omega * t[i];
            }
            if norm(&r) / bnorm <= 0.1 * RESIDUAL_TOL || omega == 0.0 {
                break;
            }
            rho = rho_new;
        }
        let true_residual = a.relative_residual(&x, b, bnorm);
        if true_residual <= RESIDUAL_TOL {
            return Ok((x, true_residual));
        }
        let stalled = true_residual > 0.5 * residual;
        residual = true_residual;
        if stalled {
            break;
        }
    }
    Err(Error::NotConverged { iterations, residual })
}

fn sor(a: &Csr, b: &[f64], bnorm: f64) -> Result<(Vec<f64>, f64)> {
    let mut x = vec![0.0; a.n];
    let mut residual = 1.0;
    let mut sweeps = 0;
    while sweeps < MAX_ITERATIONS {
        for i in 0..a.n {
            let mut s = b[i];
            for k in a.start[i]..a.start[i + 1] {
                if k != a.diag[i] {
                    s -= a.vals[k] * x[a.cols[k]];
                }
            }
            x[i] += SOR_OMEGA * (s / a.vals[a.diag[i]] - x[i]);
        }
        sweeps += 1;
        if sweeps % 25 == 0 {
            residual = a.relative_residual(&x, b, bnorm);
            if residual <= RESIDUAL_TOL {
                return Ok((x, residual));
            }
        }
    }
    Err(Error::NotConverged { iterations: sweeps, residual })
}
