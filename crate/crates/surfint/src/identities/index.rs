//! Checkers relating the zeros of a tangent vector field to the total
//! curvature and the Euler characteristic of the patch.

use super::{default_tolerance, IdentityReport, Value};
use crate::fields::{resolve_indices, IndexOptions, SingularitySpec, TangentField};
use crate::geometry::{BoundaryPoint, Chart};
use crate::quadrature::{boundary_integral, surface_integral, QuadratureSpec};
use crate::{Error, Result};
use std::f64::consts::TAU;

fn describe_inputs(field: &TangentField, resolved: &[crate::fields::ResolvedSingularity]) -> String {
    let mut s = format!("V = {}", field.describe());
    if resolved.is_empty() {
        s.push_str(", no singularities");
    } else {
        s.push_str(", singularities: [");
        for (i, r) in resolved.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!(
                "({}, {}) index {}",
                r.uv.0, r.uv.1, r.index
            ));
        }
        s.push(']');
    }
    s
}

/// The winding integrand `(V × N) · dV/ds / |V|²` at a boundary point,
/// using the projected tangent part of the field. Fails with a hypothesis
/// violation when the field (nearly) vanishes at the point, since the
/// integrand is then meaningless.
fn winding_integrand(
    identity: &'static str,
    field: &TangentField,
    bp: &BoundaryPoint,
) -> Result<f64> {
    let (raw, _) = field.ambient().eval(&bp.frame.x)?;
    let (vt, vt_s) = field.at_boundary(bp)?;
    let norm_sq = vt.norm_squared();
    let threshold = 1e-9 * (1.0 + raw.norm());
    if norm_sq <= threshold * threshold {
        let (u, v) = bp.frame.uv;
        return Err(Error::HypothesisViolated {
            identity: identity.into(),
            detail: format!(
                "the tangent field vanishes (|V| = {:.3e}) on the boundary at \
                 (u, v) = ({u:.6}, {v:.6})",
                norm_sq.sqrt()
            ),
        });
    }
    Ok(vt.cross(&bp.frame.n).dot(&vt_s) / norm_sq)
}

/// Verifies the index-counting identity
/// `∮ (V × N)·dV / |V|² = ∫ K dA − 2π Σᵢ ind(pᵢ)`
/// for a tangent field `V` that is nonzero on the boundary, with isolated
/// zeros `pᵢ` strictly inside the patch (or, on a closed chart, anywhere).
///
/// Each singularity's index is computed as the winding number of the
/// projected field around a small parameter-space circle and cross-checked
/// against any declared value; see [`resolve_indices`].
pub fn check_index_identity(
    chart: &Chart,
    field: &TangentField,
    singularities: &[SingularitySpec],
    spec: &QuadratureSpec,
    options: &IndexOptions,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    let resolved = resolve_indices(chart, field, singularities, options)?;
    let index_sum: i64 = resolved.iter().map(|r| r.index as i64).sum();
    let lhs = boundary_integral(chart, spec, |bp| winding_integrand("index", field, bp))?;
    let total_k = surface_integral(chart, spec, |fr| Ok(fr.gauss))?;
    Ok(IdentityReport::from_sides(
        "index",
        describe_inputs(field, &resolved),
        Value::Scalar(lhs.value),
        Value::Scalar(total_k.value - TAU * index_sum as f64),
        lhs.est_error + total_k.est_error,
        tolerance.unwrap_or_else(|| default_tolerance("index")),
        *spec,
    ))
}

/// Verifies the boundary form of the index theorem:
/// `χ − Σᵢ ind(pᵢ) = (1/2π) ∮ [(V × N)·dV / |V|² + κ_g] ds`.
///
/// Uses the chart's Euler characteristic (declared or inferred) and the
/// same index resolution as [`check_index_identity`]. Requires a smooth
/// boundary for the same reason as the total-curvature balance: corners
/// would contribute unmeasured exterior angles.
pub fn check_poincare_hopf(
    chart: &Chart,
    field: &TangentField,
    singularities: &[SingularitySpec],
    spec: &QuadratureSpec,
    options: &IndexOptions,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    if chart.boundary_has_corners() {
        return Err(Error::HypothesisViolated {
            identity: "poincare-hopf".into(),
            detail: "the boundary has corners; the smooth-boundary form omits \
                     their exterior angles"
                .into(),
        });
    }
    let chi = chart.euler_characteristic();
    let resolved = resolve_indices(chart, field, singularities, options)?;
    let index_sum: i64 = resolved.iter().map(|r| r.index as i64).sum();
    let integral = boundary_integral(chart, spec, |bp| {
        Ok(winding_integrand("poincare-hopf", field, bp)? + bp.kappa_g)
    })?;
    Ok(IdentityReport::from_sides(
        "poincare-hopf",
        format!("χ = {chi}, {}", describe_inputs(field, &resolved)),
        Value::Scalar(chi as f64 - index_sum as f64),
        Value::Scalar(integral.value / TAU),
        integral.est_error / TAU,
        tolerance.unwrap_or_else(|| default_tolerance("poincare-hopf")),
        *spec,
    ))
}
