use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{contains_native, convert, normalize_angle, DomainSpec, Point2};

/// Expected first exit time, measured in Brownian time for generator `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExitTime {
    Finite(f64),
    Infinite,
}

impl ExitTime {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExitTime::Finite(v) => Some(v),
            ExitTime::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExitTime::Infinite)
    }
}

impl fmt::Display for ExitTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExitTime::Finite(v) => write!(f, "{v}"),
            ExitTime::Infinite => f.write_str("inf"),
        }
    }
}

const HDISK_TAYLOR_CUTOFF: f64 = 1e-6;

/// `E_x[T_D]` for `x = pt`, converted to the domain's native chart first.
pub fn exit_time(domain: &DomainSpec, pt: Point2) -> Result<ExitTime> {
    domain.validate()?;
    let p = convert(pt, domain.native_chart())?;
    if !contains_native(domain, p.u, p.v) {
        return Err(domain.outside(&p));
    }
    Ok(exit_time_native(domain, p.u, p.v))
}

/// Closed form in native coordinates, without the membership check.
pub(crate) fn exit_time_native(domain: &DomainSpec, u: f64, v: f64) -> ExitTime {
    use ExitTime::{Finite, Infinite};
    match *domain {
        DomainSpec::Ellipse { a, b, h, k } => {
            let (dx, dy) = ((u - h) / a, (v - k) / b);
            Finite(a * a * b * b / (2.0 * a * a + 2.0 * b * b) * (1.0 - (dx * dx + dy * dy)))
        }
        DomainSpec::Parabola { p } => Finite(0.5 * (4.0 * p * u - v * v)),
        DomainSpec::Annulus { a, b } => {
            let (la, lb) = (a.ln(), b.ln());
            let denom = 4.0 * (lb - la);
            let coef_log = (b * b - a * a) / denom;
            let constant = (a * a * lb - b * b * la) / denom;
            Finite(-0.25 * u * u + coef_log * u.ln() + constant)
        }
        DomainSpec::AngularSector { alpha } => {
            if alpha >= FRAC_PI_2 {
                return Infinite;
            }
            // (r²/4)(cos 2θ / cos α − 1), with cos 2θ − cos α written as a
            // product of sines so that it stays positive up to the boundary.
            let theta = normalize_angle(v);
            let half = 0.5 * alpha;
            Finite(u * u * (half + theta).sin() * (half - theta).sin() / (2.0 * alpha.cos()))
        }
        DomainSpec::HyperbolaConvex { a, b } => {
            if b >= a {
                return Infinite;
            }
            let m = b / a;
            Finite(b * b * ((u / a).powi(2) - (v / b).powi(2) - 1.0) / (2.0 - 2.0 * m * m))
        }
        DomainSpec::HyperbolaConcave { a, b } => {
            if b >= a {
                return Infinite;
            }
            let m = b / a;
            Finite(b * b * ((u / a).powi(2) - (v / b).powi(2) + 1.0) / (2.0 - 2.0 * m * m))
        }
        DomainSpec::HyperbolicDisk { radius } => Finite(0.5 * (radius * coth(radius) - r_coth_r(u))),
        DomainSpec::Horodisk { radius } => Finite(((u - radius) / radius).ln_1p()),
        DomainSpec::GeodesicNbhd { alpha } => Finite((v.cos() / alpha.cos()).ln()),
        DomainSpec::GeodesicHalfNbhd { alpha } => Finite(v.cos().ln() - v / alpha * alpha.cos().ln()),
        DomainSpec::IdealNbhd => Infinite,
    }
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// `r·coth r`, continued to `r = 0` by its Taylor expansion `1 + r²/3`.
fn r_coth_r(r: f64) -> f64 {
    if r < HDISK_TAYLOR_CUTOFF {
        1.0 + r * r / 3.0
    } else {
        r * coth(r)
    }
}

/// The sector exit time in rectangular form for the sector of half-slope
/// `m = tan(α/2)`, i.e. `|y| < m·x`: `(m²x² − y²)/(2 − 2m²)`.
pub fn sector_exit_time_rectangular(m: f64, pt: Point2) -> Result<ExitTime> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter { key: "m".into(), reason: format!("must be positive, got {m}") });
    }
    let p = convert(pt, crate::geometry::Chart::EuclideanCartesian)?;
    if p.u.is_nan() || p.v.is_nan() || m * p.u <= p.v.abs() {
        return Err(Error::OutsideDomain { domain: format!("|y| < {m}x"), u: p.u, v: p.v });
    }
    if m >= 1.0 {
        return Ok(ExitTime::Infinite);
    }
    Ok(ExitTime::Finite((m * m * p.u * p.u - p.v * p.v) / (2.0 - 2.0 * m * m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_3, FRAC_PI_4, FRAC_PI_8, PI};

    fn finite(d: &DomainSpec, p: Point2) -> f64 {
        exit_time(d, p).unwrap().finite().unwrap()
    }

    #[test]
    fn ellipse_values() {
        let e = DomainSpec::ellipse(2.0, 1.0, 0.0, 0.0).unwrap();
        assert!((finite(&e, Point2::cartesian(0.0, 0.0)) - 0.4).abs() < 1e-15);
        let near = finite(&e, Point2::cartesian(2.0 - 1e-12, 0.0));
        assert!(near > 0.0 && near < 1e-11);
        assert!(exit_time(&e, Point2::cartesian(2.0, 0.0)).is_err());
    }

    #[test]
    fn parabola_and_annulus() {
        let p = DomainSpec::parabola(1.0).unwrap();
        assert_eq!(finite(&p, Point2::cartesian(1.0, 0.0)), 2.0);
        let a = DomainSpec::annulus(1.0, E).unwrap();
        // (e − 1)²/8 from a 30-digit evaluation.
        let v = finite(&a, Point2::polar(E.sqrt(), 0.0));
        assert!((v - 0.369_061_555_251_57).abs() < 1e-12, "{v}");
    }

    #[test]
    fn sector_values_and_dichotomy() {
        let s = DomainSpec::sector(FRAC_PI_3).unwrap();
        assert!((finite(&s, Point2::polar(1.0, 0.0)) - 0.25).abs() < 1e-15);
        let right = DomainSpec::sector(FRAC_PI_2).unwrap();
        assert_eq!(exit_time(&right, Point2::polar(1.0, 0.1)).unwrap(), ExitTime::Infinite);
        let wide = DomainSpec::sector(2.0).unwrap();
        assert!(exit_time(&wide, Point2::polar(3.0, -0.9)).unwrap().is_infinite());
    }

    #[test]
    fn sector_rectangular_form() {
        let v = sector_exit_time_rectangular(0.5, Point2::cartesian(2.0, 0.0)).unwrap().finite().unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
        let polar = finite(&DomainSpec::sector_from_slope(0.5).unwrap(), Point2::cartesian(2.0, 0.0));
        assert!((polar - 2.0 / 3.0).abs() < 1e-14);
        assert!(sector_exit_time_rectangular(1.0, Point2::cartesian(2.0, 0.0)).unwrap().is_infinite());
        assert!(sector_exit_time_rectangular(0.5, Point2::cartesian(1.0, 0.6)).is_err());
    }

    #[test]
    fn hyperbolas() {
        let c = DomainSpec::hyperbola_convex(2.0, 1.0).unwrap();
        assert!((finite(&c, Point2::cartesian(4.0, 0.0)) - 2.0).abs() < 1e-14);
        assert!(exit_time(&c, Point2::cartesian(2.0, 0.0)).is_err());
        let v = DomainSpec::hyperbola_concave(2.0, 1.0).unwrap();
        assert!((finite(&v, Point2::cartesian(0.0, 0.0)) - 2.0 / 3.0).abs() < 1e-15);
        for (a, b) in [(1.0, 1.0), (1.0, 2.0)] {
            let c = DomainSpec::hyperbola_convex(a, b).unwrap();
            assert!(exit_time(&c, Point2::cartesian(3.0, 0.0)).unwrap().is_infinite());
            let v = DomainSpec::hyperbola_concave(a, b).unwrap();
            assert!(exit_time(&v, Point2::cartesian(0.0, 0.0)).unwrap().is_infinite());
        }
    }

    #[test]
    fn hyperbolic_values() {
        let hd = DomainSpec::hyperbolic_disk(1.0).unwrap();
        // coth(1)/2 − 1/2 from a 30-digit evaluation.
        let center = finite(&hd, Point2::geodesic_polar(0.0, 0.0));
        assert!((center - 0.156_517_642_749_665_65).abs() < 1e-15);
        let tiny = finite(&hd, Point2::geodesic_polar(2e-6, 0.0));
        let just_above = finite(&hd, Point2::geodesic_polar(0.999e-6, 0.0));
        assert!((tiny - center).abs() < 1e-11 && (just_above - center).abs() < 1e-12);
        assert!((finite(&hd, Point2::half_plane(1.0, 0.0)) - center).abs() < 1e-15);

        let horo = DomainSpec::horodisk(1.0).unwrap();
        for y in [-3.0, 0.0, 17.0] {
            assert!((finite(&horo, Point2::half_plane(E, y)) - 1.0).abs() < 1e-15);
        }
        let tube = DomainSpec::geodesic_nbhd(FRAC_PI_3).unwrap();
        assert!((finite(&tube, Point2::half_plane_polar(5.0, 0.0)) - 2f64.ln()).abs() < 1e-15);
        let half = DomainSpec::geodesic_half_nbhd(FRAC_PI_4).unwrap();
        let v = finite(&half, Point2::half_plane_polar(1.0, FRAC_PI_8));
        assert!((v - 0.094_113_203_229_798_86).abs() < 1e-14, "{v}");
        let ideal = DomainSpec::IdealNbhd;
        assert!(exit_time(&ideal, Point2::half_plane_polar(1.0, FRAC_PI_4)).unwrap().is_infinite());
    }

    #[test]
    fn outside_and_mismatched_points_error() {
        let e = DomainSpec::ellipse(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(exit_time(&e, Point2::cartesian(2.0, 0.0)), Err(Error::OutsideDomain { .. })));
        assert!(matches!(exit_time(&e, Point2::half_plane(0.5, 0.0)), Err(Error::ChartMismatch { .. })));
        let s = DomainSpec::sector(1.0).unwrap();
        assert!(exit_time(&s, Point2::polar(1.0, PI)).is_err());
    }

    #[test]
    fn display_uses_inf() {
        assert_eq!(ExitTime::Infinite.to_string(), "inf");
    }
}
