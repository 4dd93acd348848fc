//! Domains as seen from the Cartesian chart a path is simulated in.

use crate::error::{Error, Result};
use crate::geometry::{conformal_factor_at, Chart, DomainSpec};

/// Membership, conformal factor and an approximate Euclidean chart distance
/// to the boundary. The distance only needs to be accurate within a few
/// step lengths of the boundary, where it drives the bridge correction.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SimRegion {
    domain: DomainSpec,
    chart: Chart,
}

impl SimRegion {
    pub fn new(domain: DomainSpec, chart: Chart) -> Result<Self> {
        let ok = match chart {
            Chart::EuclideanCartesian => !domain.is_hyperbolic(),
            Chart::HalfPlaneCartesian => domain.is_hyperbolic(),
            Chart::UnitDisk => matches!(domain, DomainSpec::HyperbolicDisk { .. }),
            _ => false,
        };
        if ok {
            Ok(SimRegion { domain, chart })
        } else {
            Err(Error::Unsupported {
                op: "simulation chart",
                kind: format!("{} in chart {chart}", domain.kind().tag()),
            })
        }
    }

    pub fn default_chart(domain: &DomainSpec) -> Chart {
        if domain.is_hyperbolic() {
            Chart::HalfPlaneCartesian
        } else {
            Chart::EuclideanCartesian
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    #[inline]
    pub fn phi(&self, x: f64, y: f64) -> f64 {
        conformal_factor_at(self.chart, x, y)
    }

    #[inline]
    pub fn inside(&self, x: f64, y: f64) -> bool {
        match (self.chart, self.domain) {
            (Chart::UnitDisk, DomainSpec::HyperbolicDisk { radius }) => x.hypot(y) < (0.5 * radius).tanh(),
            (_, DomainSpec::Annulus { a, b }) => {
                let r = x.hypot(y);
                a < r && r < b
            }
            (_, DomainSpec::AngularSector { alpha }) => x > 0.0 && y.atan2(x).abs() < 0.5 * alpha,
            (_, DomainSpec::HyperbolicDisk { radius }) => x > 0.0 && (x - radius.cosh()).hypot(y) < radius.sinh(),
            (_, DomainSpec::GeodesicNbhd { alpha }) => x > 0.0 && y.atan2(x).abs() < alpha,
            (_, DomainSpec::GeodesicHalfNbhd { alpha }) => {
                let t = y.atan2(x);
                x > 0.0 && t > 0.0 && t < alpha
            }
            (_, DomainSpec::IdealNbhd) => x > 0.0 && y > 0.0,
            // Ellipse, parabola, hyperbolas and horodisk use Cartesian native
            // coordinates already.
            (_, d) => crate::geometry::contains_native(&d, x, y),
        }
    }

    /// Approximate Euclidean distance from an interior point to the boundary.
    #[inline]
    pub fn local_distance(&self, x: f64, y: f64) -> f64 {
        match (self.chart, self.domain) {
            (Chart::UnitDisk, DomainSpec::HyperbolicDisk { radius }) => (0.5 * radius).tanh() - x.hypot(y),
            (_, DomainSpec::Ellipse { a, b, h, k }) => {
                let (dx, dy) = ((x - h) / a, (y - k) / b);
                level_distance(1.0 - dx * dx - dy * dy, 2.0 * dx / a, 2.0 * dy / b)
            }
            (_, DomainSpec::Parabola { p }) => level_distance(4.0 * p * x - y * y, 4.0 * p, 2.0 * y),
            (_, DomainSpec::HyperbolaConvex { a, b }) => {
                let level = (x / a).powi(2) - (y / b).powi(2) - 1.0;
                level_distance(level, 2.0 * x / (a * a), 2.0 * y / (b * b))
            }
            (_, DomainSpec::HyperbolaConcave { a, b }) => {
                let level = (x / a).powi(2) - (y / b).powi(2) + 1.0;
                level_distance(level, 2.0 * x / (a * a), 2.0 * y / (b * b))
            }
            (_, DomainSpec::Annulus { a, b }) => {
                let r = x.hypot(y);
                (r - a).min(b - r)
            }
            (_, DomainSpec::AngularSector { alpha }) => x.hypot(y) * (0.5 * alpha - y.atan2(x).abs()).sin(),
            (_, DomainSpec::HyperbolicDisk { radius }) => radius.sinh() - (x - radius.cosh()).hypot(y),
            (_, DomainSpec::Horodisk { radius }) => x - radius,
            (_, DomainSpec::GeodesicNbhd { alpha }) => x.hypot(y) * (alpha - y.atan2(x).abs()).sin(),
            (_, DomainSpec::GeodesicHalfNbhd { alpha }) => {
                let t = y.atan2(x);
                x.hypot(y) * t.sin().min((alpha - t).sin())
            }
            (_, DomainSpec::IdealNbhd) => x.min(y),
        }
    }
}

/// First-order distance `|F| / |∇F|` to the zero set of a level function.
#[inline]
fn level_distance(level: f64, gx: f64, gy: f64) -> f64 {
    let g = gx.hypot(gy);
    if g == 0.0 {
        f64::INFINITY
    } else {
        level.abs() / g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{contains, DomainKind, Point2};
    use proptest::prelude::*;

    fn catalog() -> Vec<DomainSpec> {
        DomainKind::ALL
            .iter()
            .map(|k| k.example().parse().unwrap())
            .chain([
                DomainSpec::hyperbola_convex(2.0, 1.0).unwrap(),
                DomainSpec::hyperbola_concave(2.0, 1.0).unwrap(),
                DomainSpec::sector(1.0).unwrap(),
            ])
            .collect()
    }

    proptest! {
        #[test]
        fn membership_agrees_with_geometry(x in -4.0f64..8.0, y in -4.0f64..4.0) {
            for d in catalog() {
                let chart = SimRegion::default_chart(&d);
                let region = SimRegion::new(d, chart).unwrap();
                let Ok(pt) = Point2::new(x, y, chart) else { continue };
                let expected = contains(&d, pt).unwrap();
                prop_assert_eq!(region.inside(x, y), expected, "{} at ({}, {})", d, x, y);
            }
        }

        #[test]
        fn disk_chart_membership(x in -1.0f64..1.0, y in -1.0f64..1.0) {
            prop_assume!(x * x + y * y < 0.999);
            let d = DomainSpec::hyperbolic_disk(1.3).unwrap();
            let region = SimRegion::new(d, Chart::UnitDisk).unwrap();
            prop_assert_eq!(region.inside(x, y), contains(&d, Point2::disk(x, y)).unwrap());
        }
    }

    #[test]
    fn unsupported_charts() {
        let horo = DomainSpec::horodisk(1.0).unwrap();
        assert!(SimRegion::new(horo, Chart::UnitDisk).is_err());
        assert!(SimRegion::new(horo, Chart::EuclideanCartesian).is_err());
    }

    #[test]
    fn hyperbolic_disk_is_a_euclidean_circle_in_the_half_plane() {
        let d = DomainSpec::hyperbolic_disk(1.0).unwrap();
        let region = SimRegion::new(d, Chart::HalfPlaneCartesian).unwrap();
        let near = Point2::geodesic_polar(1.0 - 1e-9, 0.7).to(Chart::HalfPlaneCartesian).unwrap();
        assert!(region.local_distance(near.u, near.v).abs() < 1e-8);
    }
}
