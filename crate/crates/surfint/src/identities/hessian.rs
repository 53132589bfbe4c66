//! Checkers for the pair of identities that couple the off-diagonal
//! principal-frame component of an ambient Hessian to the spread of the
//! principal curvatures.

use super::{default_tolerance, scalar_identity, IdentityReport};
use crate::fields::ScalarField;
use crate::geometry::Chart;
use crate::quadrature::QuadratureSpec;
use crate::Result;

/// Verifies the two Hessian identities for an ambient scalar `F`:
///
/// 1. `∮ ∇F(X) · dN = −∫ (κ₂ − κ₁) (∇²F(X) P) · Q dA`
/// 2. `∮ ∇F(N) · dX = +∫ (κ₂ − κ₁) (∇²F(N) P) · Q dA`
///
/// In the first the gradient and Hessian are evaluated at the surface
/// point, in the second at the unit normal (a point of the unit sphere).
/// Returns the pair of reports, ids `hessian1` and `hessian2`.
///
/// At umbilic points the principal directions `P`, `Q` are not determined,
/// but the prefactor `κ₂ − κ₁` vanishes there; the integrands are defined
/// as exactly `0` whenever the frame is flagged umbilic, which also makes
/// the checks insensitive to the arbitrary frame choice (randomized-frame
/// runs must reproduce them).
pub fn check_hessian_identities(
    chart: &Chart,
    f: &ScalarField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<Vec<IdentityReport>> {
    let inputs = format!("F = {}", f.describe());
    let mut reports = Vec::with_capacity(2);
    reports.push(scalar_identity(
        chart,
        spec,
        "hessian1",
        inputs.clone(),
        tolerance.unwrap_or_else(|| default_tolerance("hessian1")),
        |bp| {
            let jet = f.eval(&bp.frame.x)?;
            Ok(jet.gradient.dot(&bp.n_s))
        },
        |fr| {
            if fr.umbilic {
                return Ok(0.0);
            }
            let jet = f.eval(&fr.x)?;
            Ok(-(fr.kappa2 - fr.kappa1) * (jet.hessian * fr.p).dot(&fr.q))
        },
    )?);
    reports.push(scalar_identity(
        chart,
        spec,
        "hessian2",
        inputs,
        tolerance.unwrap_or_else(|| default_tolerance("hessian2")),
        |bp| {
            let jet = f.eval(&bp.frame.n)?;
            Ok(jet.gradient.dot(&bp.x_s))
        },
        |fr| {
            if fr.umbilic {
                return Ok(0.0);
            }
            let jet = f.eval(&fr.n)?;
            Ok((fr.kappa2 - fr.kappa1) * (jet.hessian * fr.p).dot(&fr.q))
        },
    )?);
    Ok(reports)
}
