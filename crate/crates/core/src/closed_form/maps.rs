//! Conformal maps from the right half plane `Re w > 0` onto the unbounded
//! Euclidean domains. They carry `Re w = 0` onto the boundary curve and the
//! positive real axis into the axis of symmetry.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::DomainSpec;

/// Image of `w` (with `Re w ≥ 0`) in the domain, using principal branches.
///
/// Parabola: `p(1 + ((2/π) arcosh w)²)`, inverting `cosh((π/2)√(z/p − 1))`.
/// Sector: `w^{α/π}`. Convex hyperbola: `c·cosh((2μ/π) arcosh w)`.
/// Concave hyperbola: `(c/2)(w^{2μ/π} − w^{−2μ/π})`.
///
/// The arcosh cut `(−∞, 1)` meets the half plane along `(0, 1)`, but the
/// parabola and convex maps are even in `arcosh w` so they are continuous
/// there.
pub fn half_plane_map(domain: &DomainSpec, w: Complex64) -> Result<Complex64> {
    domain.validate()?;
    let cut = || Error::BranchCut { re: w.re, im: w.im };
    if w.re < 0.0 || !w.im.is_finite() || !w.re.is_finite() {
        return Err(cut());
    }
    let z = match *domain {
        DomainSpec::Parabola { p } => {
            let s = w.acosh() * FRAC_2_PI;
            p * (1.0 + s * s)
        }
        DomainSpec::AngularSector { alpha } => principal_power(w, alpha / PI),
        DomainSpec::HyperbolaConvex { .. } => {
            let (mu, c) = hyperbola_constants(domain);
            c * (w.acosh() * (2.0 * mu / PI)).cosh()
        }
        DomainSpec::HyperbolaConcave { .. } => {
            if w == Complex64::new(0.0, 0.0) {
                return Err(cut());
            }
            let (mu, c) = hyperbola_constants(domain);
            let q = principal_power(w, 2.0 * mu / PI);
            0.5 * c * (q - q.inv())
        }
        _ => return Err(Error::Unsupported { op: "half_plane_map", kind: domain.kind().tag().into() }),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(cut())
    }
}

fn hyperbola_constants(domain: &DomainSpec) -> (f64, f64) {
    (domain.asymptote_angle().unwrap_or_default(), domain.linear_eccentricity().unwrap_or_default())
}

/// `w^e` on the principal branch, with `0^e = 0` for `e > 0`.
fn principal_power(w: Complex64, e: f64) -> Complex64 {
    if w.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(w.norm().powf(e), w.arg() * e)
}
