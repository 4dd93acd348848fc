//! Finite-difference oracle for the Saint-Venant problem `Δf = −1`, `f = 0`
//! on the boundary.
//!
//! In a conformal chart with metric `φ(du² + dv²)` the problem reads
//! `f_uu + f_vv = −φ`. Nodes of a uniform grid are classified against the
//! domain, curved boundaries are handled with Shortley–Weller stencils whose
//! arms stop at the boundary crossing, and the resulting nonsymmetric
//! M-matrix system is solved iteratively. Unbounded domains are cut down by
//! a [`Truncation`] with `f = 0` on the artificial edge, which gives lower
//! bounds that increase with the truncation.

mod solver;

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use solver::{Solver, MAX_ITERATIONS, RESIDUAL_TOL, SOR_OMEGA};

use crate::error::{Error, Result};
use crate::geometry::{conformal_factor_at, convert, Chart, DomainSpec, Point2};
use crate::stochastic::SimRegion;
use solver::Csr;

const ARM_BISECTIONS: usize = 52;
const MIN_ARM: f64 = 1e-8;

/// Axis-aligned box in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl BBox {
    pub fn new(umin: f64, umax: f64, vmin: f64, vmax: f64) -> Result<Self> {
        let b = BBox { umin, umax, vmin, vmax };
        if [umin, umax, vmin, vmax].iter().all(|x| x.is_finite()) && umin < umax && vmin < vmax {
            Ok(b)
        } else {
            Err(Error::InvalidParameter { key: "bbox".into(), reason: format!("empty or non-finite box {b:?}") })
        }
    }

    fn contains(&self, u: f64, v: f64) -> bool {
        self.umin < u && u < self.umax && self.vmin < v && v < self.vmax
    }

    fn intersect(self, other: BBox) -> BBox {
        BBox {
            umin: self.umin.max(other.umin),
            umax: self.umax.min(other.umax),
            vmin: self.vmin.max(other.vmin),
            vmax: self.vmax.min(other.vmax),
        }
    }
}

/// Artificial cut applied to a domain before gridding, in grid-chart
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Truncation {
    /// Open box.
    Box(BBox),
    /// Open disk `u² + v² < r²`.
    Radius { r: f64 },
    /// The exhausting ellipse `D_n` of a parabola,
    /// `(u − n)²/n² + v²/(2p(n − p)) < 1`.
    Exhaustion { n: f64 },
}

impl Truncation {
    fn check(&self, domain: &DomainSpec) -> Result<()> {
        let bad = |key: &str, reason: String| Err(Error::InvalidParameter { key: key.into(), reason });
        match *self {
            Truncation::Box(b) => BBox::new(b.umin, b.umax, b.vmin, b.vmax).map(|_| ()),
            Truncation::Radius { r } if !(r > 0.0 && r.is_finite()) => bad("r", format!("must be positive, got {r}")),
            Truncation::Radius { .. } => Ok(()),
            Truncation::Exhaustion { n } => match *domain {
                DomainSpec::Parabola { p } if n > p && n.is_finite() => Ok(()),
                DomainSpec::Parabola { p } => bad("n", format!("must exceed p = {p}, got {n}")),
                _ => Err(Error::Unsupported { op: "exhaustion truncation", kind: domain.kind().tag().into() }),
            },
        }
    }

    fn contains(&self, domain: &DomainSpec, u: f64, v: f64) -> bool {
        match *self {
            Truncation::Box(b) => b.contains(u, v),
            Truncation::Radius { r } => u * u + v * v < r * r,
            Truncation::Exhaustion { n } => {
                let DomainSpec::Parabola { p } = *domain else { return false };
                ((u - n) / n).powi(2) + v * v / (2.0 * p * (n - p)) < 1.0
            }
        }
    }

    fn bounds(&self, domain: &DomainSpec) -> BBox {
        match *self {
            Truncation::Box(b) => b,
            Truncation::Radius { r } => BBox { umin: -r, umax: r, vmin: -r, vmax: r },
            Truncation::Exhaustion { n } => {
                let p = match *domain {
                    DomainSpec::Parabola { p } => p,
                    _ => 0.0,
                };
                let half = (2.0 * p * (n - p)).max(0.0).sqrt();
                BBox { umin: 0.0, umax: 2.0 * n, vmin: -half, vmax: half }
            }
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Box(b) => write!(f, "box:umin={},umax={},vmin={},vmax={}", b.umin, b.umax, b.vmin, b.vmax),
            Truncation::Radius { r } => write!(f, "radius:r={r}"),
            Truncation::Exhaustion { n } => write!(f, "exhaustion:n={n}"),
        }
    }
}

impl std::str::FromStr for Truncation {
    type Err = Error;

    /// `box:umin=..,umax=..,vmin=..,vmax=..`, `radius:r=..` or `exhaustion:n=..`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut pairs = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse { token: item.into(), reason: "expected key=value".into() })?;
            let v: f64 =
                v.trim().parse().map_err(|_| Error::Parse { token: item.into(), reason: "not a number".into() })?;
            pairs.push((k.trim().to_string(), v));
        }
        let expected: &[&str] = match kind {
            "box" => &["umin", "umax", "vmin", "vmax"],
            "radius" => &["r"],
            "exhaustion" => &["n"],
            _ => {
                return Err(Error::Parse {
                    token: kind.into(),
                    reason: "unknown truncation; expected box, radius or exhaustion".into(),
                })
            }
        };
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !expected.contains(&k.as_str())) {
            return Err(Error::Parse { token: k.clone(), reason: format!("unknown key for {kind} truncation") });
        }
        let get = |key: &str| {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::Parse { token: s.into(), reason: format!("missing key `{key}`") })
        };
        Ok(match kind {
            "box" => Truncation::Box(BBox::new(get("umin")?, get("umax")?, get("vmin")?, get("vmax")?)?),
            "radius" => Truncation::Radius { r: get("r")? },
            _ => Truncation::Exhaustion { n: get("n")? },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    /// All four neighbours are unknowns.
    Interior,
    /// At least one stencil arm is cut by the boundary.
    BoundaryAdjacent,
    Exterior,
}

/// Grid values of the discrete Saint-Venant solution. Node `(i, j)` sits at
/// `(bbox.umin + i·h, bbox.vmin + j·h)`; storage is row-major in `j`.
#[derive(Debug, Clone)]
pub struct GridSolution {
    pub domain: DomainSpec,
    pub truncation: Option<Truncation>,
    pub chart: Chart,
    pub h: f64,
    pub bbox: BBox,
    pub nu: usize,
    pub nv: usize,
    pub mask: Vec<NodeKind>,
    pub values: Vec<f64>,
    pub residual: f64,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    h: f64,
    bbox: BBox,
    residual: f64,
    domain: String,
    chart: &'a str,
    truncation: Option<String>,
}

impl GridSolution {
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.bbox.umin + i as f64 * self.h, self.bbox.vmin + j as f64 * self.h)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.index(i, j)]
    }

    pub fn unknowns(&self) -> usize {
        self.mask.iter().filter(|k| **k != NodeKind::Exterior).count()
    }

    /// Solution at `pt`: the node value when `pt` is a node, bilinear
    /// interpolation otherwise (exterior nodes count as 0).
    pub fn value_at(&self, pt: Point2) -> Result<f64> {
        let q = convert(pt, self.chart)?;
        let region = SimRegion::new(self.domain, self.chart)?;
        let in_trunc = self.truncation.is_none_or(|t| t.contains(&self.domain, q.u, q.v));
        if !(region.inside(q.u, q.v) && in_trunc) {
            return Err(Error::OutsideDomain { domain: self.describe(), u: pt.u, v: pt.v });
        }
        let fu = (q.u - self.bbox.umin) / self.h;
        let fv = (q.v - self.bbox.vmin) / self.h;
        let (ri, rj) = (fu.round(), fv.round());
        if (fu - ri).abs() < 1e-9 && (fv - rj).abs() < 1e-9 {
            return Ok(self.value(ri as usize, rj as usize));
        }
        let (i, j) = (fu.floor() as usize, fv.floor() as usize);
        if i + 1 >= self.nu || j + 1 >= self.nv {
            return Err(Error::OutsideDomain { domain: self.describe(), u: pt.u, v: pt.v });
        }
        let (s, t) = (fu - i as f64, fv - j as f64);
        Ok((1.0 - s) * (1.0 - t) * self.value(i, j)
            + s * (1.0 - t) * self.value(i + 1, j)
            + (1.0 - s) * t * self.value(i, j + 1)
            + s * t * self.value(i + 1, j + 1))
    }

    fn describe(&self) -> String {
        match &self.truncation {
            Some(t) => format!("{} truncated by {t}", self.domain),
            None => self.domain.to_string(),
        }
    }

    /// `u,v,value` for every non-exterior node.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,value\n");
        for j in 0..self.nv {
            for i in 0..self.nu {
                if self.mask[self.index(i, j)] != NodeKind::Exterior {
                    let (u, v) = self.node(i, j);
                    out.push_str(&format!("{u},{v},{}\n", self.value(i, j)));
                }
            }
        }
        out
    }

    pub fn sidecar_json(&self) -> String {
        let sidecar = Sidecar {
            h: self.h,
            bbox: self.bbox,
            residual: self.residual,
            domain: self.domain.to_string(),
            chart: self.chart.name(),
            truncation: self.truncation.map(|t| t.to_string()),
        };
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
    }

    /// Writes the CSV to `path` and the sidecar next to it with a `.json`
    /// extension.
    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv())?;
        fs::write(path.with_extension("json"), self.sidecar_json())?;
        Ok(())
    }
}

/// Chart the grid is laid out in: the Euclidean plane, the unit disk for
/// hyperbolic disks, the half-plane for the other hyperbolic domains.
pub fn grid_chart(domain: &DomainSpec) -> Chart {
    match domain {
        DomainSpec::HyperbolicDisk { .. } => Chart::UnitDisk,
        d if d.is_hyperbolic() => Chart::HalfPlaneCartesian,
        _ => Chart::EuclideanCartesian,
    }
}

fn domain_bounds(domain: &DomainSpec, chart: Chart) -> Option<BBox> {
    match (*domain, chart) {
        (DomainSpec::Ellipse { a, b, h, k }, _) => Some(BBox { umin: h - a, umax: h + a, vmin: k - b, vmax: k + b }),
        (DomainSpec::Annulus { b, .. }, _) => Some(BBox { umin: -b, umax: b, vmin: -b, vmax: b }),
        (DomainSpec::HyperbolicDisk { radius }, Chart::UnitDisk) => {
            let t = (0.5 * radius).tanh();
            Some(BBox { umin: -t, umax: t, vmin: -t, vmax: t })
        }
        (DomainSpec::HyperbolicDisk { radius }, _) => {
            Some(BBox { umin: (-radius).exp(), umax: radius.exp(), vmin: -radius.sinh(), vmax: radius.sinh() })
        }
        _ => None,
    }
}

/// Solve on a grid of step `h` with the default solver.
///
/// `bbox` defaults to the bounding box of the (truncated) domain padded by
/// one step, with nodes on integer multiples of `h`. Unbounded domains need
/// a truncation.
pub fn solve_grid(
    domain: &DomainSpec,
    h: f64,
    bbox: Option<BBox>,
    truncation: Option<Truncation>,
) -> Result<GridSolution> {
    solve_grid_with(domain, h, bbox, truncation, Solver::default())
}

pub fn solve_grid_with(
    domain: &DomainSpec,
    h: f64,
    bbox: Option<BBox>,
    truncation: Option<Truncation>,
    solver: Solver,
) -> Result<GridSolution> {
    domain.validate()?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter { key: "h".into(), reason: format!("must be positive, got {h}") });
    }
    if let Some(t) = &truncation {
        t.check(domain)?;
    }
    let chart = grid_chart(domain);
    let region = SimRegion::new(*domain, chart)?;

    let bounds = match (domain_bounds(domain, chart), truncation.map(|t| t.bounds(domain))) {
        (Some(d), Some(t)) => d.intersect(t),
        (Some(d), None) => d,
        (None, Some(t)) => t,
        (None, None) if bbox.is_none() => {
            return Err(Error::MissingTruncation(domain.to_string()));
        }
        (None, None) => bbox.expect("checked above"),
    };
    let bbox = match bbox {
        Some(b) => BBox::new(b.umin, b.umax, b.vmin, b.vmax)?,
        None => {
            let lo = |x: f64| ((x / h).floor() - 1.0) * h;
            let hi = |x: f64| ((x / h).ceil() + 1.0) * h;
            let mut b =
                BBox { umin: lo(bounds.umin), umax: hi(bounds.umax), vmin: lo(bounds.vmin), vmax: hi(bounds.vmax) };
            if chart == Chart::HalfPlaneCartesian {
                b.umin = b.umin.max(0.0);
            }
            b
        }
    };
    let nu = ((bbox.umax - bbox.umin) / h).round() as usize + 1;
    let nv = ((bbox.vmax - bbox.vmin) / h).round() as usize + 1;
    if nu < 3 || nv < 3 {
        return Err(Error::InvalidParameter {
            key: "h".into(),
            reason: format!("grid step {h} too coarse for {bbox:?}"),
        });
    }
    let node = |i: usize, j: usize| (bbox.umin + i as f64 * h, bbox.vmin + j as f64 * h);
    let inside = |u: f64, v: f64| {
        (chart != Chart::HalfPlaneCartesian || u > 0.0)
            && region.inside(u, v)
            && truncation.is_none_or(|t| t.contains(domain, u, v))
    };

    let mut unknown = vec![usize::MAX; nu * nv];
    let mut count = 0;
    for j in 0..nv {
        for i in 0..nu {
            let (u, v) = node(i, j);
            if inside(u, v) {
                if i == 0 || j == 0 || i + 1 == nu || j + 1 == nv {
                    return Err(Error::InvalidParameter {
                        key: "bbox".into(),
                        reason: format!(
                            "node ({u}, {v}) on the edge of {bbox:?} lies inside the domain; widen the box or truncate"
                        ),
                    });
                }
                unknown[j * nu + i] = count;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(Error::InvalidParameter { key: "h".into(), reason: "no grid node falls inside the domain".into() });
    }

    // Arm length toward an outside neighbour, as a fraction of h.
    let arm = |from: (f64, f64), to: (f64, f64)| {
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..ARM_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if inside(from.0 + mid * (to.0 - from.0), from.1 + mid * (to.1 - from.1)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).max(MIN_ARM)
    };

    let mut mask = vec![NodeKind::Exterior; nu * nv];
    let mut rows = Vec::with_capacity(count);
    let mut rhs = Vec::with_capacity(count);
    for j in 0..nv {
        for i in 0..nu {
            let id = j * nu + i;
            if unknown[id] == usize::MAX {
                continue;
            }
            let here = node(i, j);
            // (neighbour node id, arm length) for left, right, down, up.
            let neighbours = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].map(|(ni, nj)| {
                let nid = nj * nu + ni;
                if unknown[nid] != usize::MAX {
                    (Some(unknown[nid]), h)
                } else {
                    (None, h * arm(here, node(ni, nj)))
                }
            });
            let cut = neighbours.iter().any(|n| n.0.is_none());
            mask[id] = if cut { NodeKind::BoundaryAdjacent } else { NodeKind::Interior };

            let mut row = Vec::with_capacity(5);
            let mut diag = 0.0;
            for (minus, plus) in [(neighbours[0], neighbours[1]), (neighbours[2], neighbours[3])] {
                let (hm, hp) = (minus.1, plus.1);
                diag += 2.0 / (hm * hp);
                if let Some(c) = minus.0 {
                    row.push((c, -2.0 / (hm * (hm + hp))));
                }
                if let Some(c) = plus.0 {
                    row.push((c, -2.0 / (hp * (hm + hp))));
                }
            }
            row.push((unknown[id], diag));
            rows.push(row);
            rhs.push(conformal_factor_at(chart, here.0, here.1));
        }
    }

    let matrix = Csr::from_rows(rows);
    let (x, residual) = solver::solve(&matrix, &rhs, solver)?;
    let mut values = vec![0.0; nu * nv];
    for (id, &k) in unknown.iter().enumerate() {
        if k != usize::MAX {
            values[id] = x[k];
        }
    }
    Ok(GridSolution { domain: *domain, truncation, chart, h, bbox, nu, nv, mask, values, residual })
}

/// Grid values at `pt` for a sequence of growing truncations, each solved
/// with its own step. The sequence approximates the monotone exhaustion of
/// an unbounded domain from below.
pub fn exhaustion_run(domain: &DomainSpec, pt: Point2, steps: &[(Truncation, f64)]) -> Result<Vec<f64>> {
    steps.iter().map(|&(t, h)| solve_grid(domain, h, None, Some(t))?.value_at(pt)).collect()
}
