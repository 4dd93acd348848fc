use std::f64::consts::TAU;

use super::exit_time::exit_time_native;
use crate::error::{Error, Result};
use crate::geometry::{convert, Chart, DomainSpec, Point2};
use crate::quadrature::integrate_2d;

pub const RIGIDITY_REL_TOL: f64 = 1e-6;

/// Torsional rigidity `4∫_D f dA`, with `f` the expected exit time and `dA`
/// the metric area element, by adaptive quadrature.
pub fn torsional_rigidity(domain: &DomainSpec) -> Result<f64> {
    domain.validate()?;
    let f = |u: f64, v: f64| exit_time_native(domain, u, v).finite().unwrap_or(f64::NAN);
    let integral = match *domain {
        DomainSpec::Ellipse { a, b, h, k } => {
            // Elliptic polar coordinates x = h + aρ cos t, y = k + bρ sin t.
            integrate_2d(
                |rho, t| f(h + a * rho * t.cos(), k + b * rho * t.sin()) * a * b * rho,
                0.0,
                1.0,
                |_| 0.0,
                |_| TAU,
                RIGIDITY_REL_TOL,
            )?
        }
        DomainSpec::Annulus { a, b } => integrate_2d(|r, t| f(r, t) * r, a, b, |_| 0.0, |_| TAU, RIGIDITY_REL_TOL)?,
        DomainSpec::HyperbolicDisk { radius } => {
            integrate_2d(|r, t| f(r, t) * r.sinh(), 0.0, radius, |_| 0.0, |_| TAU, RIGIDITY_REL_TOL)?
        }
        _ => return Err(Error::InfiniteOrUnbounded(domain.to_string())),
    };
    Ok(4.0 * integral.value)
}

/// Exit time from the ellipse `D_n` with foci `(p, 0)` and `(2n − p, 0)`,
/// `(x − n)²/n² + y²/(2p(n − p)) < 1`, which exhausts the parabola
/// `4px > y²` as `n → ∞`. Boundary points of `D_n` give 0.
pub fn ellipse_exhaustion_term(p: f64, n: f64, pt: Point2) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter { key: "p".into(), reason: format!("must be positive, got {p}") });
    }
    if !(n > p && n.is_finite()) {
        return Err(Error::InvalidParameter { key: "n".into(), reason: format!("must exceed p = {p}, got {n}") });
    }
    let q = convert(pt, Chart::EuclideanCartesian)?;
    let minor2 = 2.0 * p * (n - p);
    let level = ((q.u - n) / n).powi(2) + q.v * q.v / minor2;
    if level > 1.0 {
        return Err(Error::OutsideDomain {
            domain: format!("exhaustion ellipse D_{n} of parabola p={p}"),
            u: q.u,
            v: q.v,
        });
    }
    Ok(n * n * p * (n - p) / (minor2 + n * n) * (1.0 - level))
}
