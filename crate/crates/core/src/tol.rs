//! Numerical tolerances shared across the crate.

/// Maximum deviation of a stored point from unit norm.
pub const EPS_UNIT: f64 = 1e-12;

/// Tolerance of geometric predicates (containment, incidence, support).
pub const TOL_GEO: f64 = 1e-9;

/// Default tolerance for deciding that a point lies on a body's boundary.
pub const BOUNDARY_TOL: f64 = 1e-6;

/// Default tolerance on individual width values.
pub const WIDTH_TOL: f64 = 1e-6;

/// Default tolerance of the constancy checkers.
pub const CHECKER_TOL: f64 = 1e-3;

/// Step size below which the iterative width solver is considered converged.
pub const STEP_TOL: f64 = 1e-10;
