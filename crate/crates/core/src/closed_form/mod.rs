//! Closed-form expected exit times, their non-minimal solution families,
//! conformal maps onto the half plane and torsional rigidity.

mod exit_time;
mod family;
mod maps;
mod rigidity;

pub use exit_time::{exit_time, sector_exit_time_rectangular, ExitTime};
pub use family::{family_term, poisson_atom_sum, FamilyConstants};
pub use maps::half_plane_map;
pub use rigidity::{ellipse_exhaustion_term, torsional_rigidity, RIGIDITY_REL_TOL};
