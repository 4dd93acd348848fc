//! Lower bounds on the distance from an interior point to the boundary.
//!
//! Distances are measured in the domain's own metric: Euclidean for the
//! Euclidean catalog, hyperbolic for the hyperbolic one. Annulus, sector and
//! all hyperbolic domains have exact formulas; conic boundaries are handled by
//! a nearest-point search over a parametrization of the curve.

use std::f64::consts::TAU;

use super::chart::{convert, Point2};
use super::domain::{contains_native, normalize_angle, signed_geodesic_distance, DomainSpec};
use crate::error::Result;

const CONIC_SEEDS: usize = 32;
const CONIC_SAFETY: f64 = 0.99;
const NEWTON_STEPS: usize = 40;

/// A positive lower bound on the metric distance from `pt` to `∂domain`.
pub fn boundary_distance_lb(domain: &DomainSpec, pt: Point2) -> Result<f64> {
    let p = convert(pt, domain.native_chart())?;
    if !contains_native(domain, p.u, p.v) {
        return Err(domain.outside(&p));
    }
    Ok(distance_lb_native(domain, p.u, p.v))
}

/// Same as [`boundary_distance_lb`] for native coordinates known to be inside.
pub(crate) fn distance_lb_native(domain: &DomainSpec, u: f64, v: f64) -> f64 {
    match *domain {
        DomainSpec::Annulus { a, b } => (u - a).min(b - u),
        DomainSpec::AngularSector { alpha } => u * (0.5 * alpha - normalize_angle(v).abs()).sin(),
        DomainSpec::HyperbolicDisk { radius } => radius - u,
        DomainSpec::Horodisk { radius } => (u / radius).ln(),
        DomainSpec::GeodesicNbhd { alpha } => signed_geodesic_distance(alpha) - signed_geodesic_distance(v).abs(),
        DomainSpec::GeodesicHalfNbhd { alpha } => {
            let d = signed_geodesic_distance(v);
            d.min(signed_geodesic_distance(alpha) - d)
        }
        DomainSpec::IdealNbhd => signed_geodesic_distance(v),
        DomainSpec::Ellipse { a, b, h, k } => {
            let curve = |t: f64| {
                let (s, c) = t.sin_cos();
                ([h + a * c, k + b * s], [-a * s, b * c], [-a * c, -b * s])
            };
            CONIC_SAFETY * nearest_on_curve((u, v), curve, 0.0, TAU, true)
        }
        DomainSpec::Parabola { p } => {
            // The horizontal projection onto the parabola bounds the distance,
            // so the nearest boundary point has ordinate within `reach` of v.
            let reach = u - v * v / (4.0 * p);
            let curve = |t: f64| ([t * t / (4.0 * p), t], [t / (2.0 * p), 1.0], [1.0 / (2.0 * p), 0.0]);
            CONIC_SAFETY * nearest_on_curve((u, v), curve, v - reach, v + reach, false)
        }
        DomainSpec::HyperbolaConvex { a, b } => {
            let reach = u - a * (1.0 + (v / b).powi(2)).sqrt();
            CONIC_SAFETY * nearest_on_curve((u, v), hyperbola_branch(a, b, 1.0, true), v - reach, v + reach, false)
        }
        DomainSpec::HyperbolaConcave { a, b } => {
            let top = b * (1.0 + (u / a).powi(2)).sqrt();
            let up = top - v;
            let down = top + v;
            let d_up = nearest_on_curve((u, v), hyperbola_branch(b, a, 1.0, false), u - up, u + up, false);
            let d_down = nearest_on_curve((u, v), hyperbola_branch(b, a, -1.0, false), u - down, u + down, false);
            CONIC_SAFETY * d_up.min(d_down)
        }
    }
}

type CurvePoint = ([f64; 2], [f64; 2], [f64; 2]);

/// Branch `s·p√(1 + t²/q²)` of a hyperbola, parametrized by the other
/// coordinate `t`. With `transpose` the radical is the x-coordinate.
fn hyperbola_branch(p: f64, q: f64, sign: f64, transpose: bool) -> impl Fn(f64) -> CurvePoint {
    move |t: f64| {
        let s = (1.0 + (t / q).powi(2)).sqrt();
        let val = sign * p * s;
        let d1 = sign * p * t / (q * q * s);
        let d2 = sign * p / (q * q * s * s * s);
        if transpose {
            ([val, t], [d1, 1.0], [d2, 0.0])
        } else {
            ([t, val], [1.0, d1], [0.0, d2])
        }
    }
}

/// Distance from `p` to a parametrized curve segment: the best of a uniform
/// seed set, refined by Newton's method on the squared distance.
fn nearest_on_curve<F>(p: (f64, f64), curve: F, lo: f64, hi: f64, periodic: bool) -> f64
where
    F: Fn(f64) -> CurvePoint,
{
    let dist2 = |t: f64| {
        let (c, _, _) = curve(t);
        (c[0] - p.0).powi(2) + (c[1] - p.1).powi(2)
    };
    let n = CONIC_SEEDS;
    let step = if periodic { (hi - lo) / n as f64 } else { (hi - lo) / (n - 1) as f64 };
    let (mut best_t, mut best) = (lo, f64::INFINITY);
    for i in 0..n {
        let t = lo + step * i as f64;
        let d = dist2(t);
        if d < best {
            best = d;
            best_t = t;
        }
    }

    let mut t = best_t;
    for _ in 0..NEWTON_STEPS {
        let (c, d1, d2) = curve(t);
        let (rx, ry) = (c[0] - p.0, c[1] - p.1);
        let g1 = rx * d1[0] + ry * d1[1];
        let g2 = d1[0] * d1[0] + d1[1] * d1[1] + rx * d2[0] + ry * d2[1];
        if g2 <= 0.0 || !g2.is_finite() {
            break;
        }
        let mut next = t - g1 / g2;
        // Stay within one seed spacing of the bracketing seed.
        next = next.clamp(best_t - step, best_t + step);
        if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) {
            t = next;
            break;
        }
        t = next;
    }
    best.min(dist2(t)).sqrt()
}
