//! Domain catalog, coordinate charts, conformal factors, membership and
//! boundary-distance bounds.

mod chart;
mod distance;
mod domain;

pub use chart::{conformal_factor, convert, geodesic_step, half_plane_distance, Chart, Point2};
pub use distance::boundary_distance_lb;
pub use domain::{contains, tube_radius, DomainKind, DomainSpec};

pub(crate) use chart::conformal_factor_at;
pub(crate) use distance::distance_lb_native;
pub(crate) use domain::{contains_native, normalize_angle};
