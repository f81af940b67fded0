//! Convex geometry on the unit sphere `S^d`.
//!
//! The crate models points, hemispheres and lunes of `S^d`, convex bodies
//! given either as cone hulls of finitely many points or as analytic balls,
//! and the metric quantities built on top of them: the width of a body
//! determined by a supporting hemisphere, thickness, diameter, and checkers
//! for constant width, constant diameter and strict convexity.
//!
//! Every body is contained in an open hemisphere, so its cone in `E^{d+1}`
//! is pointed. Most predicates reduce to one primitive, nonnegative least
//! squares against the vertex cone ([`linalg::nnls`]).

pub mod bodies;
pub mod constructors;
pub mod error;
pub mod harness;
mod hull;
pub mod linalg;
pub mod metrics;
pub mod sampling;
pub mod sphere;
pub mod tol;

pub use bodies::{BallBody, DualRegion, PolytopeBody, SphericalBody};
pub use constructors::ConstructorSpec;
pub use error::{Error, Result};
pub use metrics::{ConstancyReport, Tolerances, WidthReport};
pub use sphere::{Angle, Hemisphere, Lune, UnitPoint};
