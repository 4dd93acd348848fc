//! Walk-on-Spheres for the Saint-Venant problem.
//!
//! From `x`, jump to a uniform point on the metric circle of radius
//! `ρ ≤ dist(x, ∂D)` and add the mean exit time from the center of that
//! disk: `ρ²/4` in the Euclidean plane, `2 log cosh(ρ/2)` in the
//! hyperbolic plane. Uniform angles are correct in both geometries because
//! the exit law from a geodesic disk is rotation invariant about its center.

use std::f64::consts::TAU;

use super::rng::PathRng;
use super::PathOutcome;
use crate::geometry::{convert, distance_lb_native, geodesic_step, Chart, DomainSpec, Point2};

/// Start and positions are in the family's hub chart: Euclidean Cartesian
/// or half-plane Cartesian.
pub(crate) fn wos_path(
    domain: &DomainSpec,
    start: (f64, f64),
    eps: f64,
    t_max: f64,
    max_jumps: u64,
    rng: &mut PathRng,
) -> PathOutcome {
    let hyperbolic = domain.is_hyperbolic();
    let (mut x, mut y) = start;
    let mut elapsed = 0.0;
    let mut jumps = 0u64;
    loop {
        let Some(rho) = distance_from_hub(domain, x, y) else {
            // Numerically on or across the boundary.
            return PathOutcome::Exited(elapsed);
        };
        if rho < eps {
            return PathOutcome::Exited(elapsed);
        }
        if jumps >= max_jumps || elapsed >= t_max {
            return PathOutcome::Censored;
        }
        let angle = TAU * rng.uniform();
        if hyperbolic {
            elapsed += hyperbolic_center_exit_time(rho);
            (x, y) = geodesic_step(x, y, rho, angle);
        } else {
            elapsed += 0.25 * rho * rho;
            x += rho * angle.cos();
            y += rho * angle.sin();
        }
        jumps += 1;
    }
}

fn distance_from_hub(domain: &DomainSpec, x: f64, y: f64) -> Option<f64> {
    let hub = if domain.is_hyperbolic() { Chart::HalfPlaneCartesian } else { Chart::EuclideanCartesian };
    let native = convert(Point2 { u: x, v: y, chart: hub }, domain.native_chart()).ok()?;
    if !crate::geometry::contains_native(domain, native.u, native.v) {
        return None;
    }
    Some(distance_lb_native(domain, native.u, native.v))
}

/// Mean exit time from the center of a geodesic disk of radius `ρ`.
///
/// The radial equation is `f'' + coth r · f' = −1`, whose bounded solution
/// vanishing at `ρ` is `2 log(cosh(ρ/2) / cosh(r/2))`.
pub(crate) fn hyperbolic_center_exit_time(rho: f64) -> f64 {
    // cosh x − 1 = 2 sinh²(x/2) keeps precision for small ρ.
    2.0 * (2.0 * (0.25 * rho).sinh().powi(2)).ln_1p()
}
