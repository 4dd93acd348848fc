//! Expected first exit times of planar Brownian motion.
//!
//! [`closed_form`] evaluates exit-time formulas for eleven Euclidean and
//! hyperbolic domains. Two independent oracles check them: [`stochastic`]
//! simulates Brownian paths (Euler–Maruyama in conformal charts and
//! Walk-on-Spheres), and [`pde_oracle`] solves the Saint-Venant problem
//! `Δf = −1, f = 0 on ∂D` on Shortley–Weller finite-difference grids.
//!
//! Brownian motion here has generator `Δ`, so in the unit disk the
//! expected exit time from the center is `1/4`.

pub mod closed_form;
pub mod error;
pub mod geometry;
pub mod pde_oracle;
pub mod quadrature;
pub mod stochastic;

pub use error::{Error, Result};
pub use geometry::{Chart, DomainKind, DomainSpec, Point2};
