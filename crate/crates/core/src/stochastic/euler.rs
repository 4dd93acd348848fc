//! Euler–Maruyama paths in a Cartesian-type chart.
//!
//! In a chart with metric `φ(du² + dv²)` the Laplace–Beltrami operator is
//! `(1/φ)(∂uu + ∂vv)`, so Brownian motion with generator `Δ` has no drift and
//! per-coordinate increments `√(2·dt/φ)·N(0, 1)`.
//!
//! Exits are detected two ways. A step that lands outside is cut at the
//! segment's boundary crossing and the exit time is interpolated linearly
//! along the step. A step that stays inside may still have left and come
//! back; the Brownian bridge between the two positions crosses a locally
//! flat boundary with probability `exp(−2 d₀ d₁ / (σ² dt))`, and such a
//! crossing ends the path at the middle of the step.

use super::region::SimRegion;
use super::rng::PathRng;
use super::PathOutcome;

const CROSSING_BISECTIONS: usize = 40;
const BRIDGE_CUTOFF: f64 = 40.0;

pub(crate) fn euler_path(region: &SimRegion, start: (f64, f64), dt: f64, t_max: f64, rng: &mut PathRng) -> PathOutcome {
    let (mut x, mut y) = start;
    let mut d0 = region.local_distance(x, y);
    let mut t = 0.0;
    while t < t_max {
        let phi = region.phi(x, y);
        let scale = (2.0 * dt / phi).sqrt();
        let nx = x + scale * rng.normal();
        let ny = y + scale * rng.normal();

        if !region.inside(nx, ny) {
            let frac = crossing_fraction(region, (x, y), (nx, ny));
            return PathOutcome::Exited(t + frac * dt);
        }

        let d1 = region.local_distance(nx, ny);
        // σ² = 2/φ per coordinate, so 2 d₀ d₁ / (σ² dt) = d₀ d₁ φ / dt.
        let exponent = d0 * d1 * phi / dt;
        if exponent < BRIDGE_CUTOFF && rng.uniform() < (-exponent).exp() {
            return PathOutcome::Exited(t + 0.5 * dt);
        }

        x = nx;
        y = ny;
        d0 = d1;
        t += dt;
    }
    PathOutcome::Censored
}

/// Fraction of the segment `from → to` (inside → outside) before it first
/// meets the boundary.
fn crossing_fraction(region: &SimRegion, from: (f64, f64), to: (f64, f64)) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..CROSSING_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let px = from.0 + mid * (to.0 - from.0);
        let py = from.1 + mid * (to.1 - from.1);
        if region.inside(px, py) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
