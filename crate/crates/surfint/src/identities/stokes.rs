//! Checkers for the identities that come from integrating an exact 1-form:
//! the scalar and vector Stokes pairings, the divergence and curvature
//! identities for an ambient field, and their specializations with
//! constant or position fields (moment and Minkowski identities).

use super::{
    default_tolerance, scalar_identity, vector_identity, IdentityReport,
};
use crate::fields::{AmbientField, ScalarField, SurfaceVectorField};
use crate::geometry::Chart;
use crate::quadrature::QuadratureSpec;
use crate::Result;
use nalgebra::Vector3;

fn tol_or(identity: &str, tolerance: Option<f64>) -> f64 {
    tolerance.unwrap_or_else(|| default_tolerance(identity))
}

/// Verifies `∮ f ∇g · dX = ∫ [(∇f·P)(∇g·Q) − (∇f·Q)(∇g·P)] dA`
/// for scalar functions `f`, `g` of ambient space restricted to the patch.
///
/// The right-hand side is antisymmetric in `(f, g)`, and so (up to an exact
/// term) is the left: `lhs(f, g) + lhs(g, f) = ∮ d(fg) = 0`.
pub fn check_stokes_scalar(
    chart: &Chart,
    f: &ScalarField,
    g: &ScalarField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    scalar_identity(
        chart,
        spec,
        "stokes-scalar",
        format!("f = {}, g = {}", f.describe(), g.describe()),
        tol_or("stokes-scalar", tolerance),
        |bp| {
            let fj = f.eval(&bp.frame.x)?;
            let gj = g.eval(&bp.frame.x)?;
            Ok(fj.value * gj.gradient.dot(&bp.x_s))
        },
        |fr| {
            let fj = f.eval(&fr.x)?;
            let gj = g.eval(&fr.x)?;
            Ok(fj.gradient.dot(&fr.p) * gj.gradient.dot(&fr.q)
                - fj.gradient.dot(&fr.q) * gj.gradient.dot(&fr.p))
        },
    )
}

/// Verifies `∮ V · dW = ∫ [∇_P V · ∇_Q W − ∇_Q V · ∇_P W] dA` for surface
/// vector fields `V`, `W` (ambient restrictions, the position `X`, or the
/// normal `N`).
pub fn check_stokes_vector(
    chart: &Chart,
    v: &SurfaceVectorField,
    w: &SurfaceVectorField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    scalar_identity(
        chart,
        spec,
        "stokes-vector",
        format!("V = {}, W = {}", v.describe(), w.describe()),
        tol_or("stokes-vector", tolerance),
        |bp| {
            let (value, _) = v.at_boundary(bp)?;
            let (_, w_s) = w.at_boundary(bp)?;
            Ok(value.dot(&w_s))
        },
        |fr| {
            let (_, v_p, v_q) = v.at_frame(fr)?;
            let (_, w_p, w_q) = w.at_frame(fr)?;
            Ok(v_p.dot(&w_q) - v_q.dot(&w_p))
        },
    )
}

/// Verifies the tangential-divergence identity
/// `∮ (V × N) · dX = −∫ [∇_P V·P + ∇_Q V·Q + 2H V·N] dA`.
///
/// The bracket is the ambient divergence of `V` expressed in the surface
/// frame, so for a constant field the right side reduces to the mean
/// curvature moment of the patch.
pub fn check_divergence_identity(
    chart: &Chart,
    field: &AmbientField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    scalar_identity(
        chart,
        spec,
        "eq3",
        format!("V = {}", field.describe()),
        tol_or("eq3", tolerance),
        |bp| {
            let (value, _) = field.eval(&bp.frame.x)?;
            Ok(value.cross(&bp.frame.n).dot(&bp.x_s))
        },
        |fr| {
            let (value, jacobian) = field.eval(&fr.x)?;
            let v_p = jacobian * fr.p;
            let v_q = jacobian * fr.q;
            Ok(-(v_p.dot(&fr.p) + v_q.dot(&fr.q) + 2.0 * fr.mean * value.dot(&fr.n)))
        },
    )
}

/// Verifies the curvature-weighted companion of the divergence identity,
/// `∮ (V × N) · dN = ∫ [κ₂ ∇_P V·P + κ₁ ∇_Q V·Q + 2K V·N] dA`,
/// where `P`, `Q` are the principal directions for `κ₁ ≤ κ₂`. Note the
/// cross-pairing: each principal derivative is weighted by the *other*
/// principal curvature.
pub fn check_curvature_identity(
    chart: &Chart,
    field: &AmbientField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    scalar_identity(
        chart,
        spec,
        "eq4",
        format!("V = {}", field.describe()),
        tol_or("eq4", tolerance),
        |bp| {
            let (value, _) = field.eval(&bp.frame.x)?;
            Ok(value.cross(&bp.frame.n).dot(&bp.n_s))
        },
        |fr| {
            let (value, jacobian) = field.eval(&fr.x)?;
            let v_p = jacobian * fr.p;
            let v_q = jacobian * fr.q;
            Ok(fr.kappa2 * v_p.dot(&fr.p)
                + fr.kappa1 * v_q.dot(&fr.q)
                + 2.0 * fr.gauss * value.dot(&fr.n))
        },
    )
}

/// Verifies the four vector-valued curvature moment identities:
///
/// 1. `∮ N × dX = −2 ∫ H N dA`
/// 2. `∮ N × dN =  2 ∫ K N dA`
/// 3. `∮ X × (N × dX) = −2 ∫ H (X × N) dA`
/// 4. `∮ X × (N × dN) =  2 ∫ K (X × N) dA`
///
/// Returns one report per identity, ids `moment1` through `moment4`.
pub fn check_moment_identities(
    chart: &Chart,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<Vec<IdentityReport>> {
    let inputs = "curvature moments of the patch".to_string();
    let mut reports = Vec::with_capacity(4);
    reports.push(vector_identity(
        chart,
        spec,
        "moment1",
        inputs.clone(),
        tol_or("moment1", tolerance),
        |bp| Ok(bp.frame.n.cross(&bp.x_s)),
        |fr| Ok(-2.0 * fr.mean * fr.n),
    )?);
    reports.push(vector_identity(
        chart,
        spec,
        "moment2",
        inputs.clone(),
        tol_or("moment2", tolerance),
        |bp| Ok(bp.frame.n.cross(&bp.n_s)),
        |fr| Ok(2.0 * fr.gauss * fr.n),
    )?);
    reports.push(vector_identity(
        chart,
        spec,
        "moment3",
        inputs.clone(),
        tol_or("moment3", tolerance),
        |bp| Ok(bp.frame.x.cross(&bp.frame.n.cross(&bp.x_s))),
        |fr| Ok(-2.0 * fr.mean * fr.x.cross(&fr.n)),
    )?);
    reports.push(vector_identity(
        chart,
        spec,
        "moment4",
        inputs,
        tol_or("moment4", tolerance),
        |bp| Ok(bp.frame.x.cross(&bp.frame.n.cross(&bp.n_s))),
        |fr| Ok(2.0 * fr.gauss * fr.x.cross(&fr.n)),
    )?);
    Ok(reports)
}

/// Verifies the two Minkowski-type support identities:
///
/// 1. `∮ (X × N) · dX = −2 ∫ (1 + H X·N) dA`
/// 2. `∮ (X × N) · dN =  2 ∫ (H + K X·N) dA`
///
/// Returns the pair of reports, ids `minkowski1` and `minkowski2`. On a
/// closed patch both left sides vanish, recovering the classical closed
/// Minkowski formulas `∫(1 + H X·N) dA = 0` and `∫(H + K X·N) dA = 0`.
pub fn check_minkowski(
    chart: &Chart,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<Vec<IdentityReport>> {
    let inputs = "support-function moments of the patch".to_string();
    let mut reports = Vec::with_capacity(2);
    reports.push(scalar_identity(
        chart,
        spec,
        "minkowski1",
        inputs.clone(),
        tol_or("minkowski1", tolerance),
        |bp| Ok(bp.frame.x.cross(&bp.frame.n).dot(&bp.x_s)),
        |fr| Ok(-2.0 * (1.0 + fr.mean * fr.x.dot(&fr.n))),
    )?);
    reports.push(scalar_identity(
        chart,
        spec,
        "minkowski2",
        inputs,
        tol_or("minkowski2", tolerance),
        |bp| Ok(bp.frame.x.cross(&bp.frame.n).dot(&bp.n_s)),
        |fr| Ok(2.0 * (fr.mean + fr.gauss * fr.x.dot(&fr.n))),
    )?);
    Ok(reports)
}

/// Convenience used by several checkers' input strings.
pub(crate) fn constant_vector_inputs(c: &Vector3<f64>) -> String {
    format!("C = ({}, {}, {})", c.x, c.y, c.z)
}
