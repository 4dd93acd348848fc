//! Coordinate charts on the Euclidean and hyperbolic planes.
//!
//! Euclidean points live in Cartesian or polar coordinates about the origin.
//! Hyperbolic points live in one of three models: the right half plane
//! `{x > 0}` (Cartesian or Euclidean-polar coordinates), the unit disk, or
//! geodesic polar coordinates about a fixed base point. The half plane and
//! the disk are identified by the Möbius map `w = (1 + z) / (1 - z)`, which
//! sends the disk center to the half-plane point `(1, 0)`; geodesic polar
//! coordinates are taken about that same point.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    EuclideanCartesian,
    EuclideanPolar,
    HalfPlaneCartesian,
    HalfPlanePolar,
    UnitDisk,
    GeodesicPolar,
}

impl Chart {
    pub const ALL: [Chart; 6] = [
        Chart::EuclideanCartesian,
        Chart::EuclideanPolar,
        Chart::HalfPlaneCartesian,
        Chart::HalfPlanePolar,
        Chart::UnitDisk,
        Chart::GeodesicPolar,
    ];

    pub fn is_hyperbolic(self) -> bool {
        !matches!(self, Chart::EuclideanCartesian | Chart::EuclideanPolar)
    }

    /// Charts whose coordinates are conformal to `du² + dv²`.
    pub fn is_cartesian(self) -> bool {
        matches!(self, Chart::EuclideanCartesian | Chart::HalfPlaneCartesian | Chart::UnitDisk)
    }

    /// Whether `(u, v)` is a valid coordinate pair for this chart.
    pub fn admits(self, u: f64, v: f64) -> bool {
        if !u.is_finite() || !v.is_finite() {
            return false;
        }
        match self {
            Chart::EuclideanCartesian => true,
            Chart::EuclideanPolar | Chart::GeodesicPolar => u >= 0.0,
            Chart::HalfPlaneCartesian => u > 0.0,
            Chart::HalfPlanePolar => u > 0.0 && v.abs() < FRAC_PI_2,
            Chart::UnitDisk => u * u + v * v < 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::EuclideanCartesian => "euclidean",
            Chart::EuclideanPolar => "euclidean-polar",
            Chart::HalfPlaneCartesian => "half-plane",
            Chart::HalfPlanePolar => "half-plane-polar",
            Chart::UnitDisk => "unit-disk",
            Chart::GeodesicPolar => "geodesic-polar",
        }
    }
}

impl std::str::FromStr for Chart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Chart::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown chart".into() })
    }
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A planar point tagged with the chart its coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub u: f64,
    pub v: f64,
    pub chart: Chart,
}

impl Point2 {
    pub fn new(u: f64, v: f64, chart: Chart) -> Result<Self> {
        if chart.admits(u, v) {
            Ok(Point2 { u, v, chart })
        } else {
            Err(Error::OutOfChart { chart, u, v })
        }
    }

    pub fn cartesian(x: f64, y: f64) -> Self {
        Point2 { u: x, v: y, chart: Chart::EuclideanCartesian }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Point2 { u: r, v: theta, chart: Chart::EuclideanPolar }
    }

    pub fn half_plane(x: f64, y: f64) -> Self {
        Point2 { u: x, v: y, chart: Chart::HalfPlaneCartesian }
    }

    pub fn half_plane_polar(r: f64, theta: f64) -> Self {
        Point2 { u: r, v: theta, chart: Chart::HalfPlanePolar }
    }

    pub fn disk(x: f64, y: f64) -> Self {
        Point2 { u: x, v: y, chart: Chart::UnitDisk }
    }

    pub fn geodesic_polar(r: f64, theta: f64) -> Self {
        Point2 { u: r, v: theta, chart: Chart::GeodesicPolar }
    }

    pub fn is_valid(&self) -> bool {
        self.chart.admits(self.u, self.v)
    }

    pub fn to(&self, target: Chart) -> Result<Point2> {
        convert(*self, target)
    }
}

pub(crate) fn disk_to_half_plane(z: Complex64) -> Complex64 {
    (1.0 + z) / (1.0 - z)
}

pub(crate) fn half_plane_to_disk(w: Complex64) -> Complex64 {
    (w - 1.0) / (w + 1.0)
}

fn check(pt: Point2) -> Result<Point2> {
    if pt.is_valid() {
        Ok(pt)
    } else {
        Err(Error::OutOfChart { chart: pt.chart, u: pt.u, v: pt.v })
    }
}

/// Euclidean-family points go through Cartesian coordinates, hyperbolic ones
/// through the half-plane model.
fn to_hub(pt: Point2) -> Point2 {
    match pt.chart {
        Chart::EuclideanCartesian | Chart::HalfPlaneCartesian => pt,
        Chart::EuclideanPolar => Point2::cartesian(pt.u * pt.v.cos(), pt.u * pt.v.sin()),
        Chart::HalfPlanePolar => Point2::half_plane(pt.u * pt.v.cos(), pt.u * pt.v.sin()),
        Chart::UnitDisk => {
            let w = disk_to_half_plane(Complex64::new(pt.u, pt.v));
            Point2::half_plane(w.re, w.im)
        }
        Chart::GeodesicPolar => {
            let z = Complex64::from_polar((0.5 * pt.u).tanh(), pt.v);
            let w = disk_to_half_plane(z);
            Point2::half_plane(w.re, w.im)
        }
    }
}

fn from_hub(hub: Point2, target: Chart) -> Point2 {
    let (x, y) = (hub.u, hub.v);
    match target {
        Chart::EuclideanCartesian | Chart::HalfPlaneCartesian => Point2 { u: x, v: y, chart: target },
        Chart::EuclideanPolar | Chart::HalfPlanePolar => Point2 { u: x.hypot(y), v: y.atan2(x), chart: target },
        Chart::UnitDisk => {
            let z = half_plane_to_disk(Complex64::new(x, y));
            Point2::disk(z.re, z.im)
        }
        Chart::GeodesicPolar => {
            let z = half_plane_to_disk(Complex64::new(x, y));
            let rho = z.norm();
            let theta = if rho == 0.0 { 0.0 } else { z.arg() };
            Point2::geodesic_polar(2.0 * rho.atanh(), theta)
        }
    }
}

/// Re-express `pt` in `target`. Only charts on the same plane convert.
pub fn convert(pt: Point2, target: Chart) -> Result<Point2> {
    let pt = check(pt)?;
    if pt.chart == target {
        return Ok(pt);
    }
    if pt.chart.is_hyperbolic() != target.is_hyperbolic() {
        return Err(Error::ChartMismatch { from: pt.chart, to: target });
    }
    check(from_hub(to_hub(pt), target))
}

/// The factor `φ` with metric `φ (du² + dv²)` in a Cartesian-type chart.
pub fn conformal_factor(chart: Chart, pt: Point2) -> Result<f64> {
    if !chart.is_cartesian() {
        return Err(Error::Unsupported { op: "conformal_factor", kind: format!("non-Cartesian chart {chart}") });
    }
    let p = convert(pt, chart)?;
    Ok(conformal_factor_at(chart, p.u, p.v))
}

/// Unchecked conformal factor for coordinates already known to be in range.
#[inline]
pub(crate) fn conformal_factor_at(chart: Chart, u: f64, v: f64) -> f64 {
    match chart {
        Chart::HalfPlaneCartesian => 1.0 / (u * u),
        Chart::UnitDisk => {
            let s = 1.0 - u * u - v * v;
            4.0 / (s * s)
        }
        _ => 1.0,
    }
}

/// Hyperbolic distance between two half-plane points.
pub fn half_plane_distance(x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let d2 = (x1 - x2).powi(2) + (y1 - y2).powi(2);
    (1.0 + d2 / (2.0 * x1 * x2)).acosh()
}

/// The half-plane point at hyperbolic distance `rho` from `(x, y)` in
/// direction `angle`: the isometry `w ↦ (w − iy)/x` moves the start to
/// `(1, 0)`, where the geodesic circle is the image of a Euclidean circle
/// of radius `tanh(rho/2)` about the disk center.
pub fn geodesic_step(x: f64, y: f64, rho: f64, angle: f64) -> (f64, f64) {
    let z = Complex64::from_polar((0.5 * rho).tanh(), angle);
    let w = disk_to_half_plane(z);
    (x * w.re, x * w.im + y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    const TOL: f64 = 1e-12;

    #[test]
    fn polar_axis_point_to_cartesian() {
        let p = convert(Point2::polar(2.0, 0.0), Chart::EuclideanCartesian).unwrap();
        assert!((p.u - 2.0).abs() < TOL && p.v.abs() < TOL);
    }

    #[test]
    fn base_point_is_disk_center() {
        let p = convert(Point2::half_plane(1.0, 0.0), Chart::UnitDisk).unwrap();
        assert!(p.u.abs() < TOL && p.v.abs() < TOL);
        let g = convert(Point2::half_plane(1.0, 0.0), Chart::GeodesicPolar).unwrap();
        assert!(g.u.abs() < TOL);
    }

    #[test]
    fn half_plane_polar_to_cartesian() {
        let p = convert(Point2::half_plane_polar(1.0, FRAC_PI_4), Chart::HalfPlaneCartesian).unwrap();
        let s = 0.5f64.sqrt();
        assert!((p.u - s).abs() < TOL && (p.v - s).abs() < TOL);
    }

    #[test]
    fn geodesic_radius_is_hyperbolic_distance() {
        for &(r, t) in &[(0.3, 0.0), (1.0, 2.0), (2.5, -1.0)] {
            let p = convert(Point2::geodesic_polar(r, t), Chart::HalfPlaneCartesian).unwrap();
            let d = half_plane_distance(1.0, 0.0, p.u, p.v);
            assert!((d - r).abs() < 1e-10, "{d} vs {r}");
        }
    }

    #[test]
    fn geodesic_step_moves_by_rho() {
        for &(x, y, rho, a) in &[(1.0, 0.0, 0.5, 0.3), (3.0, -2.0, 1.7, 2.0), (0.2, 5.0, 0.01, -1.0)] {
            let (qx, qy) = geodesic_step(x, y, rho, a);
            assert!((half_plane_distance(x, y, qx, qy) - rho).abs() < 1e-9);
        }
    }

    #[test]
    fn cross_family_conversion_is_rejected() {
        let err = convert(Point2::cartesian(1.0, 0.0), Chart::UnitDisk).unwrap_err();
        assert!(matches!(err, Error::ChartMismatch { .. }));
    }

    #[test]
    fn out_of_range_targets_and_sources_are_rejected() {
        assert!(Point2::new(-1.0, 0.0, Chart::HalfPlaneCartesian).is_err());
        assert!(Point2::new(0.8, 0.8, Chart::UnitDisk).is_err());
        assert!(Point2::new(1.0, PI / 2.0, Chart::HalfPlanePolar).is_err());
        assert!(convert(Point2::disk(1.0, 0.0), Chart::HalfPlaneCartesian).is_err());
    }

    #[test]
    fn conformal_factors() {
        assert_eq!(conformal_factor(Chart::EuclideanCartesian, Point2::cartesian(3.0, -7.0)).unwrap(), 1.0);
        assert_eq!(conformal_factor(Chart::HalfPlaneCartesian, Point2::half_plane(2.0, 7.0)).unwrap(), 0.25);
        assert_eq!(conformal_factor(Chart::UnitDisk, Point2::disk(0.0, 0.0)).unwrap(), 4.0);
        assert!(conformal_factor(Chart::HalfPlanePolar, Point2::half_plane_polar(1.0, 0.0)).is_err());
        assert!(conformal_factor(Chart::HalfPlaneCartesian, Point2::half_plane(0.0, 1.0)).is_err());
    }

    #[test]
    fn disk_factor_diverges_along_a_radius() {
        let mut last = 0.0;
        for i in 0..100 {
            let r = i as f64 / 100.0;
            let f = conformal_factor(Chart::UnitDisk, Point2::disk(r * 0.6, r * 0.8)).unwrap();
            assert!(f > last);
            last = f;
        }
        assert!(last > 1e4);
    }

    #[test]
    fn chart_names_round_trip() {
        for c in Chart::ALL {
            assert_eq!(c.name().parse::<Chart>().unwrap(), c);
        }
    }
}
