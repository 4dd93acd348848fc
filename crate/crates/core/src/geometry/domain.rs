//! The domain catalog.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::chart::{convert, Chart, Point2};
use crate::error::{Error, Result};

/// One of the eleven planar domains, each written in its native chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainSpec {
    /// `(x-h)²/a² + (y-k)²/b² < 1`.
    Ellipse { a: f64, b: f64, h: f64, k: f64 },
    /// `4px > y²`.
    Parabola { p: f64 },
    /// `a < r < b` about the origin.
    Annulus { a: f64, b: f64 },
    /// `|θ| < α/2`, `α` the full opening angle.
    AngularSector { alpha: f64 },
    /// `x²/a² − y²/b² > 1`, `x > 0`.
    HyperbolaConvex { a: f64, b: f64 },
    /// `x²/a² − y²/b² > −1`.
    HyperbolaConcave { a: f64, b: f64 },
    /// Geodesic polar `r < R` about the base point.
    HyperbolicDisk {
        #[serde(rename = "R")]
        radius: f64,
    },
    /// Half plane `x > R`.
    Horodisk {
        #[serde(rename = "R")]
        radius: f64,
    },
    /// Half-plane polar `|θ| < α`.
    GeodesicNbhd { alpha: f64 },
    /// Half-plane polar `0 < θ < α`.
    GeodesicHalfNbhd { alpha: f64 },
    /// Half-plane polar `0 < θ < π/2`.
    IdealNbhd,
}

/// Parameter-free discriminant of [`DomainSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Ellipse,
    Parabola,
    Annulus,
    AngularSector,
    HyperbolaConvex,
    HyperbolaConcave,
    HyperbolicDisk,
    Horodisk,
    GeodesicNbhd,
    GeodesicHalfNbhd,
    IdealNbhd,
}

impl DomainKind {
    pub const ALL: [DomainKind; 11] = [
        DomainKind::Ellipse,
        DomainKind::Parabola,
        DomainKind::Annulus,
        DomainKind::AngularSector,
        DomainKind::HyperbolaConvex,
        DomainKind::HyperbolaConcave,
        DomainKind::HyperbolicDisk,
        DomainKind::Horodisk,
        DomainKind::GeodesicNbhd,
        DomainKind::GeodesicHalfNbhd,
        DomainKind::IdealNbhd,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DomainKind::Ellipse => "ellipse",
            DomainKind::Parabola => "parabola",
            DomainKind::Annulus => "annulus",
            DomainKind::AngularSector => "sector",
            DomainKind::HyperbolaConvex => "hyperbola-convex",
            DomainKind::HyperbolaConcave => "hyperbola-concave",
            DomainKind::HyperbolicDisk => "hdisk",
            DomainKind::Horodisk => "horodisk",
            DomainKind::GeodesicNbhd => "geodesic-nbhd",
            DomainKind::GeodesicHalfNbhd => "geodesic-halfnbhd",
            DomainKind::IdealNbhd => "ideal-nbhd",
        }
    }

    /// Accepted keys, required first.
    pub fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            DomainKind::Ellipse => (&["a", "b"], &["h", "k"]),
            DomainKind::Parabola => (&["p"], &[]),
            DomainKind::Annulus | DomainKind::HyperbolaConvex | DomainKind::HyperbolaConcave => (&["a", "b"], &[]),
            DomainKind::AngularSector | DomainKind::GeodesicNbhd | DomainKind::GeodesicHalfNbhd => (&["alpha"], &[]),
            DomainKind::HyperbolicDisk | DomainKind::Horodisk => (&["R"], &[]),
            DomainKind::IdealNbhd => (&[], &[]),
        }
    }

    pub fn example(self) -> &'static str {
        match self {
            DomainKind::Ellipse => "ellipse:a=2,b=1,h=0,k=0",
            DomainKind::Parabola => "parabola:p=1",
            DomainKind::Annulus => "annulus:a=1,b=2",
            DomainKind::AngularSector => "sector:alpha=1.0471975512",
            DomainKind::HyperbolaConvex => "hyperbola-convex:a=2,b=1",
            DomainKind::HyperbolaConcave => "hyperbola-concave:a=2,b=1",
            DomainKind::HyperbolicDisk => "hdisk:R=1",
            DomainKind::Horodisk => "horodisk:R=1",
            DomainKind::GeodesicNbhd => "geodesic-nbhd:alpha=0.8",
            DomainKind::GeodesicHalfNbhd => "geodesic-halfnbhd:alpha=0.8",
            DomainKind::IdealNbhd => "ideal-nbhd",
        }
    }
}

impl FromStr for DomainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DomainKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown domain kind".into() })
    }
}

fn positive(key: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { key: key.into(), reason: format!("must be positive, got {x}") })
    }
}

fn finite(key: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { key: key.into(), reason: format!("must be finite, got {x}") })
    }
}

fn angle_below(key: &str, x: f64, max: f64, max_name: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 && x < max {
        Ok(())
    } else {
        Err(Error::InvalidParameter { key: key.into(), reason: format!("must lie in (0, {max_name}), got {x}") })
    }
}

impl DomainSpec {
    pub fn ellipse(a: f64, b: f64, h: f64, k: f64) -> Result<Self> {
        DomainSpec::Ellipse { a, b, h, k }.validated()
    }

    pub fn parabola(p: f64) -> Result<Self> {
        DomainSpec::Parabola { p }.validated()
    }

    pub fn annulus(a: f64, b: f64) -> Result<Self> {
        DomainSpec::Annulus { a, b }.validated()
    }

    pub fn sector(alpha: f64) -> Result<Self> {
        DomainSpec::AngularSector { alpha }.validated()
    }

    /// The sector `x > m|y|`, i.e. full angle `2 arctan m`.
    pub fn sector_from_slope(m: f64) -> Result<Self> {
        positive("m", m)?;
        DomainSpec::AngularSector { alpha: 2.0 * m.atan() }.validated()
    }

    pub fn hyperbola_convex(a: f64, b: f64) -> Result<Self> {
        DomainSpec::HyperbolaConvex { a, b }.validated()
    }

    pub fn hyperbola_concave(a: f64, b: f64) -> Result<Self> {
        DomainSpec::HyperbolaConcave { a, b }.validated()
    }

    pub fn hyperbolic_disk(radius: f64) -> Result<Self> {
        DomainSpec::HyperbolicDisk { radius }.validated()
    }

    pub fn horodisk(radius: f64) -> Result<Self> {
        DomainSpec::Horodisk { radius }.validated()
    }

    pub fn geodesic_nbhd(alpha: f64) -> Result<Self> {
        DomainSpec::GeodesicNbhd { alpha }.validated()
    }

    pub fn geodesic_half_nbhd(alpha: f64) -> Result<Self> {
        DomainSpec::GeodesicHalfNbhd { alpha }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DomainSpec::Ellipse { a, b, h, k } => {
                positive("a", a)?;
                positive("b", b)?;
                finite("h", h)?;
                finite("k", k)
            }
            DomainSpec::Parabola { p } => positive("p", p),
            DomainSpec::Annulus { a, b } => {
                positive("a", a)?;
                positive("b", b)?;
                if a < b {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        key: "b".into(),
                        reason: format!("outer radius {b} must exceed inner radius {a}"),
                    })
                }
            }
            DomainSpec::AngularSector { alpha } => angle_below("alpha", alpha, PI, "π"),
            DomainSpec::HyperbolaConvex { a, b } | DomainSpec::HyperbolaConcave { a, b } => {
                positive("a", a)?;
                positive("b", b)
            }
            DomainSpec::HyperbolicDisk { radius } | DomainSpec::Horodisk { radius } => positive("R", radius),
            DomainSpec::GeodesicNbhd { alpha } | DomainSpec::GeodesicHalfNbhd { alpha } => {
                angle_below("alpha", alpha, FRAC_PI_2, "π/2")
            }
            DomainSpec::IdealNbhd => Ok(()),
        }
    }

    pub fn kind(&self) -> DomainKind {
        match self {
            DomainSpec::Ellipse { .. } => DomainKind::Ellipse,
            DomainSpec::Parabola { .. } => DomainKind::Parabola,
            DomainSpec::Annulus { .. } => DomainKind::Annulus,
            DomainSpec::AngularSector { .. } => DomainKind::AngularSector,
            DomainSpec::HyperbolaConvex { .. } => DomainKind::HyperbolaConvex,
            DomainSpec::HyperbolaConcave { .. } => DomainKind::HyperbolaConcave,
            DomainSpec::HyperbolicDisk { .. } => DomainKind::HyperbolicDisk,
            DomainSpec::Horodisk { .. } => DomainKind::Horodisk,
            DomainSpec::GeodesicNbhd { .. } => DomainKind::GeodesicNbhd,
            DomainSpec::GeodesicHalfNbhd { .. } => DomainKind::GeodesicHalfNbhd,
            DomainSpec::IdealNbhd => DomainKind::IdealNbhd,
        }
    }

    /// The chart in which the domain's defining inequality and exit-time
    /// formula are written.
    pub fn native_chart(&self) -> Chart {
        match self {
            DomainSpec::Ellipse { .. }
            | DomainSpec::Parabola { .. }
            | DomainSpec::HyperbolaConvex { .. }
            | DomainSpec::HyperbolaConcave { .. } => Chart::EuclideanCartesian,
            DomainSpec::Annulus { .. } | DomainSpec::AngularSector { .. } => Chart::EuclideanPolar,
            DomainSpec::HyperbolicDisk { .. } => Chart::GeodesicPolar,
            DomainSpec::Horodisk { .. } => Chart::HalfPlaneCartesian,
            DomainSpec::GeodesicNbhd { .. } | DomainSpec::GeodesicHalfNbhd { .. } | DomainSpec::IdealNbhd => {
                Chart::HalfPlanePolar
            }
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.native_chart().is_hyperbolic()
    }

    /// Relatively compact domains.
    pub fn is_bounded(&self) -> bool {
        matches!(self, DomainSpec::Ellipse { .. } | DomainSpec::Annulus { .. } | DomainSpec::HyperbolicDisk { .. })
    }

    /// The finiteness dichotomy: sectors of angle ≥ π/2, hyperbolas with
    /// `b ≥ a` and the ideal-point neighborhood have infinite expected exit time.
    pub fn has_finite_exit_time(&self) -> bool {
        match *self {
            DomainSpec::AngularSector { alpha } => alpha < FRAC_PI_2,
            DomainSpec::HyperbolaConvex { a, b } | DomainSpec::HyperbolaConcave { a, b } => b < a,
            DomainSpec::IdealNbhd => false,
            _ => true,
        }
    }

    /// Asymptotic slope `m`: `b/a` for hyperbolas, `tan(α/2)` for sectors.
    pub fn slope(&self) -> Option<f64> {
        match *self {
            DomainSpec::HyperbolaConvex { a, b } | DomainSpec::HyperbolaConcave { a, b } => Some(b / a),
            DomainSpec::AngularSector { alpha } => Some((0.5 * alpha).tan()),
            _ => None,
        }
    }

    /// `μ = arctan m` for hyperbolas.
    pub fn asymptote_angle(&self) -> Option<f64> {
        match self {
            DomainSpec::HyperbolaConvex { .. } | DomainSpec::HyperbolaConcave { .. } => self.slope().map(f64::atan),
            _ => None,
        }
    }

    /// Linear eccentricity `c = √(a² + b²)` for hyperbolas.
    pub fn linear_eccentricity(&self) -> Option<f64> {
        match *self {
            DomainSpec::HyperbolaConvex { a, b } | DomainSpec::HyperbolaConcave { a, b } => Some(a.hypot(b)),
            _ => None,
        }
    }

    /// Hyperbolic radius of a geodesic tube of half-angle `α`.
    pub fn tube_radius(&self) -> Option<f64> {
        match *self {
            DomainSpec::GeodesicNbhd { alpha } | DomainSpec::GeodesicHalfNbhd { alpha } => Some(tube_radius(alpha)),
            _ => None,
        }
    }

    pub(crate) fn outside(&self, pt: &Point2) -> Error {
        Error::OutsideDomain { domain: self.to_string(), u: pt.u, v: pt.v }
    }
}

/// `log(cos α / (1 − sin α))`, the hyperbolic distance from the geodesic
/// `θ = 0` to the ray `θ = α` in the half plane.
pub fn tube_radius(alpha: f64) -> f64 {
    signed_geodesic_distance(alpha)
}

/// Signed hyperbolic distance from the half-plane point at polar angle `θ`
/// to the geodesic `θ = 0`: `log((1 + sin θ)/cos θ) = asinh(tan θ)`.
#[inline]
pub(crate) fn signed_geodesic_distance(theta: f64) -> f64 {
    theta.tan().asinh()
}

/// Strict membership in the open domain. Points in another chart of the
/// same plane are converted first.
pub fn contains(domain: &DomainSpec, pt: Point2) -> Result<bool> {
    let p = convert(pt, domain.native_chart())?;
    Ok(contains_native(domain, p.u, p.v))
}

pub(crate) fn contains_native(domain: &DomainSpec, u: f64, v: f64) -> bool {
    match *domain {
        DomainSpec::Ellipse { a, b, h, k } => {
            let (dx, dy) = ((u - h) / a, (v - k) / b);
            dx * dx + dy * dy < 1.0
        }
        DomainSpec::Parabola { p } => 4.0 * p * u > v * v,
        DomainSpec::Annulus { a, b } => a < u && u < b,
        DomainSpec::AngularSector { alpha } => u > 0.0 && normalize_angle(v).abs() < 0.5 * alpha,
        DomainSpec::HyperbolaConvex { a, b } => u > 0.0 && (u / a).powi(2) - (v / b).powi(2) > 1.0,
        DomainSpec::HyperbolaConcave { a, b } => (u / a).powi(2) - (v / b).powi(2) > -1.0,
        DomainSpec::HyperbolicDisk { radius } => u < radius,
        DomainSpec::Horodisk { radius } => u > radius,
        DomainSpec::GeodesicNbhd { alpha } => v.abs() < alpha,
        DomainSpec::GeodesicHalfNbhd { alpha } => v > 0.0 && v < alpha,
        DomainSpec::IdealNbhd => v > 0.0 && v < FRAC_PI_2,
    }
}

/// Map an angle into `(−π, π]`.
pub(crate) fn normalize_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.kind().tag();
        match *self {
            DomainSpec::Ellipse { a, b, h, k } => write!(f, "{tag}:a={a},b={b},h={h},k={k}"),
            DomainSpec::Parabola { p } => write!(f, "{tag}:p={p}"),
            DomainSpec::Annulus { a, b }
            | DomainSpec::HyperbolaConvex { a, b }
            | DomainSpec::HyperbolaConcave { a, b } => write!(f, "{tag}:a={a},b={b}"),
            DomainSpec::AngularSector { alpha }
            | DomainSpec::GeodesicNbhd { alpha }
            | DomainSpec::GeodesicHalfNbhd { alpha } => write!(f, "{tag}:alpha={alpha}"),
            DomainSpec::HyperbolicDisk { radius } | DomainSpec::Horodisk { radius } => write!(f, "{tag}:R={radius}"),
            DomainSpec::IdealNbhd => f.write_str(tag),
        }
    }
}

impl FromStr for DomainSpec {
    type Err = Error;

    /// Parses `kind:key=value,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, rest) = match s.split_once(':') {
            Some((t, r)) => (t.trim(), r.trim()),
            None => (s, ""),
        };
        let kind: DomainKind = tag.parse()?;
        let (required, optional) = kind.keys();

        let mut values: Vec<(&str, f64)> = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, raw) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse { token: item.to_string(), reason: "expected key=value".into() })?;
            let key = key.trim();
            if !required.contains(&key) && !optional.contains(&key) {
                return Err(Error::Parse { token: key.to_string(), reason: format!("unknown key for {tag}") });
            }
            if values.iter().any(|(k, _)| *k == key) {
                return Err(Error::Parse { token: key.to_string(), reason: "duplicate key".into() });
            }
            let value: f64 = raw.trim().parse().map_err(|_| Error::Parse {
                token: key.to_string(),
                reason: format!("`{}` is not a number", raw.trim()),
            })?;
            values.push((key, value));
        }
        let get = |key: &str| values.iter().find(|(k, _)| *k == key).map(|&(_, v)| v);
        let need = |key: &str| {
            get(key).ok_or_else(|| Error::Parse { token: key.to_string(), reason: format!("missing key for {tag}") })
        };

        let spec = match kind {
            DomainKind::Ellipse => DomainSpec::Ellipse {
                a: need("a")?,
                b: need("b")?,
                h: get("h").unwrap_or(0.0),
                k: get("k").unwrap_or(0.0),
            },
            DomainKind::Parabola => DomainSpec::Parabola { p: need("p")? },
            DomainKind::Annulus => DomainSpec::Annulus { a: need("a")?, b: need("b")? },
            DomainKind::AngularSector => DomainSpec::AngularSector { alpha: need("alpha")? },
            DomainKind::HyperbolaConvex => DomainSpec::HyperbolaConvex { a: need("a")?, b: need("b")? },
            DomainKind::HyperbolaConcave => DomainSpec::HyperbolaConcave { a: need("a")?, b: need("b")? },
            DomainKind::HyperbolicDisk => DomainSpec::HyperbolicDisk { radius: need("R")? },
            DomainKind::Horodisk => DomainSpec::Horodisk { radius: need("R")? },
            DomainKind::GeodesicNbhd => DomainSpec::GeodesicNbhd { alpha: need("alpha")? },
            DomainKind::GeodesicHalfNbhd => DomainSpec::GeodesicHalfNbhd { alpha: need("alpha")? },
            DomainKind::IdealNbhd => DomainSpec::IdealNbhd,
        };
        spec.validated()
    }
}
