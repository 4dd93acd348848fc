//! Nonnegative harmonic functions vanishing on the boundary.
//!
//! Adding any of these to the minimal Saint-Venant solution gives another
//! positive solution; the minimal one is the expected exit time.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{contains_native, convert, normalize_angle, Chart, DomainSpec, Point2};

/// Weights of the finite-atom Poisson representation
/// `C∞·x + Σ C_k·x/(x² + (y − t_k)²)` and of the tube family `A`, `B`.
///
/// The parabola and sector families use `c_inf` as their single constant.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyConstants {
    pub c_inf: f64,
    /// `(C_k, t_k)` pairs.
    pub atoms: Vec<(f64, f64)>,
    pub a: f64,
    pub b: f64,
}

impl FamilyConstants {
    pub fn linear(c: f64) -> Self {
        FamilyConstants { c_inf: c, ..Default::default() }
    }

    pub fn tube(a: f64, b: f64) -> Self {
        FamilyConstants { a, b, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let named = [("c_inf", self.c_inf), ("a", self.a), ("b", self.b)];
        for (key, w) in named.into_iter().chain(self.atoms.iter().map(|&(c, _)| ("atom weight", c))) {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter {
                    key: key.into(),
                    reason: format!("must be a nonnegative finite weight, got {w}"),
                });
            }
        }
        if let Some(&(_, t)) = self.atoms.iter().find(|(_, t)| !t.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "atom position".into(),
                reason: format!("must be finite, got {t}"),
            });
        }
        Ok(())
    }
}

/// The harmonic family term for the parabola, sector or geodesic tube.
pub fn family_term(domain: &DomainSpec, pt: Point2, k: &FamilyConstants) -> Result<f64> {
    k.validate()?;
    if !matches!(
        domain,
        DomainSpec::Parabola { .. } | DomainSpec::AngularSector { .. } | DomainSpec::GeodesicNbhd { .. }
    ) {
        return Err(Error::Unsupported { op: "family_term", kind: domain.kind().tag().into() });
    }
    let p = convert(pt, domain.native_chart())?;
    if !contains_native(domain, p.u, p.v) {
        return Err(domain.outside(&p));
    }
    Ok(family_term_native(domain, p.u, p.v, k))
}

pub(crate) fn family_term_native(domain: &DomainSpec, u: f64, v: f64, k: &FamilyConstants) -> f64 {
    match *domain {
        DomainSpec::Parabola { p } => {
            let z = Complex64::new(u, v);
            let s = (z / p - 1.0).sqrt();
            k.c_inf * (s * FRAC_PI_2).cosh().re
        }
        DomainSpec::AngularSector { alpha } => {
            // Re z^{π/α} in polar form.
            let e = PI / alpha;
            k.c_inf * u.powf(e) * (e * normalize_angle(v)).cos()
        }
        DomainSpec::GeodesicNbhd { alpha } => {
            let e = PI / (2.0 * alpha);
            (k.a * u.powf(e) + k.b * u.powf(-e)) * (e * v).cos()
        }
        _ => 0.0,
    }
}

/// `C∞·x + Σ C_k·x/(x² + (y − t_k)²)` on the right half plane.
///
/// Accepts a point in either Cartesian chart with positive abscissa.
pub fn poisson_atom_sum(pt: Point2, k: &FamilyConstants) -> Result<f64> {
    k.validate()?;
    if !matches!(pt.chart, Chart::EuclideanCartesian | Chart::HalfPlaneCartesian) {
        return Err(Error::Unsupported { op: "poisson_atom_sum", kind: format!("chart {}", pt.chart) });
    }
    if pt.u.is_nan() || pt.u <= 0.0 || !pt.v.is_finite() {
        return Err(Error::OutOfChart { chart: Chart::HalfPlaneCartesian, u: pt.u, v: pt.v });
    }
    Ok(poisson_atom_sum_xy(pt.u, pt.v, k))
}

pub(crate) fn poisson_atom_sum_xy(x: f64, y: f64, k: &FamilyConstants) -> f64 {
    k.c_inf * x + k.atoms.iter().map(|&(c, t)| c * x / (x * x + (y - t).powi(2))).sum::<f64>()
}
