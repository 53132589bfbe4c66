//! Integral and pointwise identity checkers.
//!
//! Every checker evaluates both sides of one identity with the quadrature
//! machinery from [`crate::quadrature`] and returns an [`IdentityReport`]
//! recording the two sides, their difference, an error estimate from grid
//! refinement, and a pass/fail verdict under a relative tolerance.
//!
//! The checkers never special-case a surface: lowering the tolerance or
//! perturbing a chart really does make them fail.

mod curvature;
mod hessian;
mod index;
mod stokes;

pub use curvature::{
    check_gauss_bonnet, check_gb_integrand, check_liouville, check_unit_tangent_identity,
    gauss_bonnet_integrand_identity, liouville_residual,
};
pub use hessian::check_hessian_identities;
pub use index::{check_index_identity, check_poincare_hopf};
pub use stokes::{
    check_curvature_identity, check_divergence_identity, check_minkowski,
    check_moment_identities, check_stokes_scalar, check_stokes_vector,
};

use crate::geometry::{BoundaryPoint, Chart, FramedPoint};
use crate::quadrature::{boundary_integral, surface_integral, QuadratureSpec};
use crate::Result;
use nalgebra::Vector3;

/// Stable identifiers for every checker, in canonical run order. These are
/// the names accepted by `--identity` and printed in reports; they are part
/// of the tool's interface and must not change.
pub const IDENTITY_IDS: [&str; 18] = [
    "stokes-scalar",
    "stokes-vector",
    "eq3",
    "eq4",
    "moment1",
    "moment2",
    "moment3",
    "moment4",
    "minkowski1",
    "minkowski2",
    "liouville",
    "gauss-bonnet",
    "gb-integrand",
    "unit-tangent",
    "index",
    "poincare-hopf",
    "hessian1",
    "hessian2",
];

/// Default pass tolerance for an identity. Integral identities use `1e-8`;
/// the three that involve finite differencing or winding numbers
/// (`liouville`, `index`, `poincare-hopf`) use `1e-6`.
pub fn default_tolerance(identity: &str) -> f64 {
    match identity {
        "liouville" | "index" | "poincare-hopf" => 1e-6,
        _ => 1e-8,
    }
}

/// One side of an identity: a scalar or a vector in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Scalar(f64),
    Vector(Vector3<f64>),
}

impl Value {
    /// Euclidean norm (absolute value for scalars).
    pub fn norm(&self) -> f64 {
        match self {
            Value::Scalar(s) => s.abs(),
            Value::Vector(v) => v.norm(),
        }
    }

    /// Norm of the difference between two values of the same shape.
    /// Panics if one side is a scalar and the other a vector; a single
    /// identity always produces matching shapes.
    pub fn distance(&self, other: &Value) -> f64 {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => (a - b).abs(),
            (Value::Vector(a), Value::Vector(b)) => (a - b).norm(),
            _ => panic!("identity sides must have the same shape"),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s:.12e}"),
            Value::Vector(v) => write!(f, "({:.12e}, {:.12e}, {:.12e})", v.x, v.y, v.z),
        }
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// Stable identifier from [`IDENTITY_IDS`].
    pub identity: &'static str,
    /// Human-readable description of the inputs (fields, constants, scalars).
    pub inputs: String,
    /// Boundary side of the identity as evaluated.
    pub lhs: Value,
    /// Surface side (or the topological constant) as evaluated.
    pub rhs: Value,
    /// `‖lhs − rhs‖`.
    pub residual: f64,
    /// Estimated numerical error in the two sides, from comparing against a
    /// once-refined quadrature grid (plus truncation terms where finite
    /// differencing is involved).
    pub est_error: f64,
    /// Relative tolerance the verdict used.
    pub tolerance: f64,
    /// Quadrature resolution the check ran at.
    pub spec: QuadratureSpec,
    /// `residual ≤ tolerance · (1 + ‖lhs‖ + ‖rhs‖)`.
    pub pass: bool,
}

impl IdentityReport {
    /// Builds a report from the two evaluated sides, applying the pass rule
    /// `residual ≤ tolerance · (1 + ‖lhs‖ + ‖rhs‖)`.
    pub fn from_sides(
        identity: &'static str,
        inputs: String,
        lhs: Value,
        rhs: Value,
        est_error: f64,
        tolerance: f64,
        spec: QuadratureSpec,
    ) -> IdentityReport {
        let residual = lhs.distance(&rhs);
        let pass = residual <= tolerance * (1.0 + lhs.norm() + rhs.norm());
        IdentityReport {
            identity,
            inputs,
            lhs,
            rhs,
            residual,
            est_error,
            tolerance,
            spec,
            pass,
        }
    }
}

impl std::fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} | lhs = {} rhs = {} residual = {:.3e} est_error = {:.3e}",
            self.identity,
            if self.pass { "pass" } else { "FAIL" },
            self.lhs,
            self.rhs,
            self.residual,
            self.est_error,
        )
    }
}

/// Runs one scalar-valued identity: a boundary integral on the left, a
/// surface integral on the right.
pub(crate) fn scalar_identity<B, S>(
    chart: &Chart,
    spec: &QuadratureSpec,
    identity: &'static str,
    inputs: String,
    tolerance: f64,
    boundary: B,
    surface: S,
) -> Result<IdentityReport>
where
    B: FnMut(&BoundaryPoint) -> Result<f64>,
    S: FnMut(&FramedPoint) -> Result<f64>,
{
    let lhs = boundary_integral(chart, spec, boundary)?;
    let rhs = surface_integral(chart, spec, surface)?;
    Ok(IdentityReport::from_sides(
        identity,
        inputs,
        Value::Scalar(lhs.value),
        Value::Scalar(rhs.value),
        lhs.est_error + rhs.est_error,
        tolerance,
        *spec,
    ))
}

/// Runs one vector-valued identity (component-wise integrals on both sides).
pub(crate) fn vector_identity<B, S>(
    chart: &Chart,
    spec: &QuadratureSpec,
    identity: &'static str,
    inputs: String,
    tolerance: f64,
    boundary: B,
    surface: S,
) -> Result<IdentityReport>
where
    B: FnMut(&BoundaryPoint) -> Result<Vector3<f64>>,
    S: FnMut(&FramedPoint) -> Result<Vector3<f64>>,
{
    let lhs = boundary_integral(chart, spec, boundary)?;
    let rhs = surface_integral(chart, spec, surface)?;
    Ok(IdentityReport::from_sides(
        identity,
        inputs,
        Value::Vector(lhs.value),
        Value::Vector(rhs.value),
        lhs.est_error + rhs.est_error,
        tolerance,
        *spec,
    ))
}
