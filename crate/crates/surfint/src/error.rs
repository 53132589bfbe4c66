//! Crate-wide error type.
//!
//! Expression parsing and evaluation keep their own error type
//! ([`crate::expr::ExprError`]) because it carries source positions; every
//! other stage funnels into [`Error`] so geometry, quadrature, field, and
//! checker failures compose without boxing.

use thiserror::Error;

/// Alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),

    /// Chart construction input is inconsistent (bad domain, wrong
    /// expression variables, false periodicity declaration, ...).
    #[error("invalid chart: {detail}")]
    InvalidChart { detail: String },

    /// The chart fails to be an immersion at a sampled parameter point.
    #[error("degenerate chart at (u, v) = ({u}, {v}): |X_u x X_v| = {density:e} is below 1e-12")]
    DegenerateChart { u: f64, v: f64, density: f64 },

    /// A boundary curve has (numerically) zero speed where a unit tangent is
    /// required.
    #[error("zero-speed boundary parametrization at boundary parameter t = {t}")]
    ZeroSpeedBoundary { t: f64 },

    /// The requested boundary parameter lies outside `[0, segment count]`.
    #[error("boundary parameter t = {t} outside [0, {segments}] (one unit interval per boundary segment)")]
    BoundaryParameterRange { t: f64, segments: usize },

    /// The chart is closed: there is no boundary curve to evaluate.
    #[error("chart is closed: it has no boundary")]
    NoBoundary,

    /// An integrand could not be evaluated at a quadrature node.
    #[error("integrand evaluation failed at (u, v) = ({u}, {v}): {source}")]
    AtNode {
        u: f64,
        v: f64,
        #[source]
        source: Box<Error>,
    },

    /// Invalid quadrature parameters.
    #[error("invalid quadrature spec: {reason}")]
    InvalidQuadratureSpec { reason: String },

    /// Field construction input is inconsistent (wrong variables).
    #[error("invalid field: {detail}")]
    InvalidField { detail: String },

    /// The probed field vanishes on the index circle.
    #[error("field vanishes on the index circle around (u, v) = ({u}, {v}) (tangential norm {norm:e})")]
    FieldVanishesOnCircle { u: f64, v: f64, norm: f64 },

    /// The accumulated winding is not close to an integer multiple of 2π.
    #[error("winding number {winding} is not within {tolerance} of an integer; refine the sampling or move the circle")]
    NonIntegerWinding { winding: f64, tolerance: f64 },

    /// A singularity location violates the placement rules.
    #[error("invalid singularity at (u, v) = ({u}, {v}): {reason}")]
    InvalidSingularity { u: f64, v: f64, reason: String },

    /// A computed winding disagrees with the declared index.
    #[error("computed index {computed} at (u, v) = ({u}, {v}) contradicts declared index {declared}")]
    IndexMismatch {
        u: f64,
        v: f64,
        computed: i32,
        declared: i32,
    },

    /// A checker's hypothesis fails on the given input; reported as a
    /// distinct status rather than a pass/fail verdict.
    #[error("hypothesis violated for `{identity}`: {detail}")]
    HypothesisViolated { identity: String, detail: String },

    /// Definition-file schema problems, with a JSON-path-style location.
    #[error("definition error at {path}: {detail}")]
    Definition { path: String, detail: String },

    /// Name lookup failures (surfaces, fields, scalars, checker ids).
    #[error("unknown {kind} `{name}`{hint}")]
    UnknownName {
        kind: &'static str,
        name: String,
        hint: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach the quadrature node at which an integrand failed.
    pub(crate) fn at_node(self, u: f64, v: f64) -> Error {
        // Hypothesis violations keep their identity so callers can map them
        // to a distinct report status; wrapping would hide the variant.
        if self.is_hypothesis_violation() {
            return self;
        }
        Error::AtNode {
            u,
            v,
            source: Box::new(self),
        }
    }

    /// True when the error is a checker-hypothesis violation (these become a
    /// `hypothesis-violated` report status instead of a failure).
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::HypothesisViolated { .. })
    }
}
