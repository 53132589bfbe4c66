//! Checkers that exercise the curvature side of the library: the total
//! curvature balance on a patch, the rotation-rate formula for the angle a
//! boundary curve makes with a fixed direction field, a pointwise identity
//! satisfied by the associated singular tangent field, and the total
//! curvature computed from any unit tangent field.

use super::{default_tolerance, scalar_identity, IdentityReport, Value};
use crate::fields::{wrap_to_pi, TangentField};
use crate::geometry::{Chart, Domain, FramedPoint};
use crate::quadrature::{boundary_integral, surface_integral, QuadratureSpec};
use crate::{Error, Result};
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Verifies the total-curvature balance
/// `∮ κ_g ds + ∫ K dA = 2πχ`
/// against the patch's Euler characteristic (declared, or inferred as
/// `2 − #loops` for genus-zero patches).
///
/// Requires a smooth boundary: on a boundary with corners the balance also
/// involves the exterior angles, which this checker does not measure, so it
/// reports a hypothesis violation instead of a misleading verdict.
pub fn check_gauss_bonnet(
    chart: &Chart,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    if chart.boundary_has_corners() {
        return Err(Error::HypothesisViolated {
            identity: "gauss-bonnet".into(),
            detail: "the boundary has corners; the smooth-boundary balance omits \
                     their exterior angles"
                .into(),
        });
    }
    let chi = chart.euler_characteristic();
    let kg = boundary_integral(chart, spec, |bp| Ok(bp.kappa_g))?;
    let total_k = surface_integral(chart, spec, |fr| Ok(fr.gauss))?;
    Ok(IdentityReport::from_sides(
        "gauss-bonnet",
        format!("χ = {chi}"),
        Value::Scalar(kg.value + total_k.value),
        Value::Scalar(TAU * chi as f64),
        kg.est_error + total_k.est_error,
        tolerance.unwrap_or_else(|| default_tolerance("gauss-bonnet")),
        *spec,
    ))
}

/// Angle of the boundary tangent against the conormal-style frame built
/// from a fixed unit direction `c`: `b₁ = (c × N)/|c × N|`, `b₂ = N × b₁`.
fn angle_against_direction(c: &Vector3<f64>, bp: &crate::geometry::BoundaryPoint) -> f64 {
    let w = c.cross(&bp.frame.n);
    let b1 = w / w.norm();
    let b2 = bp.frame.n.cross(&b1);
    bp.x_s.dot(&b2).atan2(bp.x_s.dot(&b1))
}

fn check_direction_transversality(
    c: &Vector3<f64>,
    bp: &crate::geometry::BoundaryPoint,
) -> Result<()> {
    let w = c.dot(&bp.frame.n);
    if w.abs() > 1.0 - 1e-6 {
        let (u, v) = bp.frame.uv;
        return Err(Error::HypothesisViolated {
            identity: "liouville".into(),
            detail: format!(
                "the direction C is (anti)parallel to the surface normal at the \
                 boundary point (u, v) = ({u:.6}, {v:.6}): |C·N| = {:.9}",
                w.abs()
            ),
        });
    }
    Ok(())
}

/// Evaluates both sides of the rotation-rate formula at one boundary point:
/// the arc-length derivative `dθ/ds` of the angle between the boundary
/// tangent and the frame derived from `c` (by central differencing), and
/// the closed form `κ_g − (C·N)/(1 − (C·N)²) (C×N)·N_s`.
fn rotation_rate_sides(
    chart: &Chart,
    c: &Vector3<f64>,
    t: f64,
    total_length: f64,
) -> Result<(f64, f64)> {
    let norm = c.norm();
    if norm <= 0.0 {
        return Err(Error::HypothesisViolated {
            identity: "liouville".into(),
            detail: "the direction C must be a nonzero vector".into(),
        });
    }
    let c = c / norm;

    let (segment_index, local) = {
        // Re-derive the segment-local coordinate the same way
        // `boundary_point` does.
        let k = chart.boundary().len();
        if k == 0 {
            return Err(Error::NoBoundary);
        }
        if !(0.0..=k as f64).contains(&t) {
            return Err(Error::BoundaryParameterRange { t, segments: k });
        }
        let i = (t.floor() as usize).min(k - 1);
        (i, t - i as f64)
    };
    let seg = chart.boundary()[segment_index];

    let center = chart.boundary_point_on_segment(&seg, local, t)?;
    check_direction_transversality(&c, &center)?;

    // Central difference with a step of 1e-4 of the total boundary length
    // in arc length, converted to the segment parameter via the local
    // speed. The stencil is clamped inside the segment so both evaluation
    // points stay on the same smooth piece.
    let h_s = 1e-4 * total_length;
    let dt = h_s / center.speed;
    if !(dt > 0.0 && dt < 0.5) {
        return Err(Error::HypothesisViolated {
            identity: "liouville".into(),
            detail: format!(
                "cannot place a finite-difference stencil of width {dt:.3e} \
                 on one boundary segment"
            ),
        });
    }
    let local_c = local.clamp(dt, 1.0 - dt);
    let center = if local_c == local {
        center
    } else {
        chart.boundary_point_on_segment(&seg, local_c, t)?
    };
    let minus = chart.boundary_point_on_segment(&seg, local_c - dt, t)?;
    let plus = chart.boundary_point_on_segment(&seg, local_c + dt, t)?;
    check_direction_transversality(&c, &minus)?;
    check_direction_transversality(&c, &plus)?;

    let dtheta = wrap_to_pi(angle_against_direction(&c, &plus) - angle_against_direction(&c, &minus));
    let ds = chart.arc_length_between_on_segment(&seg, local_c - dt, local_c + dt)?;
    let theta_s = dtheta / ds;

    let w = c.dot(&center.frame.n);
    let rhs = center.kappa_g - w / (1.0 - w * w) * c.cross(&center.frame.n).dot(&center.n_s);
    Ok((theta_s, rhs))
}

/// Pointwise residual of the rotation-rate formula at boundary parameter
/// `t`: `|dθ/ds − (κ_g − (C·N)/(1−(C·N)²) (C×N)·N_s)|`, with `dθ/ds`
/// measured by central finite differencing along the boundary.
///
/// Fails with a hypothesis violation when `c` is within `1e-6` of
/// (anti)parallel to the surface normal at any stencil point, where the
/// frame built from `c` degenerates.
pub fn liouville_residual(chart: &Chart, c: &Vector3<f64>, t: f64) -> Result<f64> {
    let total = chart.boundary_length()?;
    let (theta_s, rhs) = rotation_rate_sides(chart, c, t, total)?;
    Ok((theta_s - rhs).abs())
}

/// Sweeps the rotation-rate formula over the whole boundary (at least 512
/// points, spread evenly over the segments) and reports the worst point:
/// `lhs` is the finite-difference `dθ/ds` there, `rhs` the closed form, so
/// the report's residual is the maximum pointwise residual.
///
/// On a closed patch there is no boundary curve and the check passes
/// vacuously with both sides zero.
pub fn check_liouville(
    chart: &Chart,
    c: &Vector3<f64>,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    let tolerance = tolerance.unwrap_or_else(|| default_tolerance("liouville"));
    let inputs = super::stokes::constant_vector_inputs(c);
    if chart.is_closed() {
        return Ok(IdentityReport::from_sides(
            "liouville",
            format!("{inputs}; closed patch, no boundary curve"),
            Value::Scalar(0.0),
            Value::Scalar(0.0),
            0.0,
            tolerance,
            *spec,
        ));
    }

    let total = chart.boundary_length()?;
    let segments = chart.boundary().len();
    let per_segment = 512_usize.div_ceil(segments);
    let mut worst: Option<(f64, f64, f64)> = None;
    for i in 0..segments {
        for j in 0..per_segment {
            let t = i as f64 + (j as f64 + 0.5) / per_segment as f64;
            let (theta_s, rhs) = rotation_rate_sides(chart, c, t, total)?;
            let residual = (theta_s - rhs).abs();
            if worst.map_or(true, |(r, _, _)| residual > r) {
                worst = Some((residual, theta_s, rhs));
            }
        }
    }
    let (_, theta_s, rhs) = worst.expect("at least one sweep point");
    // The dominant numerical error is the O(h²) truncation of the central
    // difference; the arc-length step is 1e-4 of the boundary length.
    let h_s = 1e-4 * total;
    Ok(IdentityReport::from_sides(
        "liouville",
        inputs,
        Value::Scalar(theta_s),
        Value::Scalar(rhs),
        h_s * h_s / 6.0,
        tolerance,
        *spec,
    ))
}

/// Pointwise check that the curvature-weighted divergence bracket of the
/// singular field `V = (C·N)/((C·N)² − 1) · C` collapses to the Gauss
/// curvature: evaluates `κ₂ ∇_P V·P + κ₁ ∇_Q V·Q + 2K V·N` at the surface
/// point `(u, v)` through the frame (no symbolic simplification) and
/// returns its absolute difference from `K`.
///
/// Fails with a hypothesis violation when `1 − (C·N)² < 1e-8`, where the
/// field blows up.
pub fn gauss_bonnet_integrand_identity(
    chart: &Chart,
    c: &Vector3<f64>,
    uv: (f64, f64),
) -> Result<f64> {
    let norm = c.norm();
    if norm <= 0.0 {
        return Err(Error::HypothesisViolated {
            identity: "gb-integrand".into(),
            detail: "the direction C must be a nonzero vector".into(),
        });
    }
    let c = c / norm;
    let frame = chart.frame_at(uv.0, uv.1)?;
    let (quantity, gauss) = bracket_and_gauss(&frame, &c, uv)?;
    Ok((quantity - gauss).abs())
}

/// Evaluates the curvature-weighted bracket of the singular field at one
/// frame, returning it alongside the Gauss curvature there. `c` must be a
/// unit vector.
fn bracket_and_gauss(frame: &FramedPoint, c: &Vector3<f64>, uv: (f64, f64)) -> Result<(f64, f64)> {
    let w = c.dot(&frame.n);
    let denom = 1.0 - w * w;
    if denom < 1e-8 {
        return Err(Error::HypothesisViolated {
            identity: "gb-integrand".into(),
            detail: format!(
                "C is too close to the surface normal at (u, v) = ({:.6}, {:.6}): \
                 1 − (C·N)² = {denom:.3e}",
                uv.0, uv.1
            ),
        });
    }
    // φ(w) = w/(w² − 1) and its derivative; V = φ(C·N) C, so the tangential
    // derivatives of V come from differentiating C·N through the shape
    // operator: ∇_P (C·N) = C·(−κ₁ P), ∇_Q (C·N) = C·(−κ₂ Q).
    let phi = w / (w * w - 1.0);
    let phi_prime = -(1.0 + w * w) / ((w * w - 1.0) * (w * w - 1.0));
    let c_p = c.dot(&frame.p);
    let c_q = c.dot(&frame.q);
    let v_p_dot_p = -phi_prime * frame.kappa1 * c_p * c_p;
    let v_q_dot_q = -phi_prime * frame.kappa2 * c_q * c_q;
    let quantity =
        frame.kappa2 * v_p_dot_p + frame.kappa1 * v_q_dot_q + 2.0 * frame.gauss * phi * w;
    Ok((quantity, frame.gauss))
}

fn random_interior_point<R: Rng>(domain: &Domain, rng: &mut R) -> (f64, f64) {
    // Keep a small relative margin from the domain edge so frames stay
    // clear of degenerate chart edges (poles and the like).
    const MARGIN: f64 = 1e-3;
    match *domain {
        Domain::Rectangle { u0, u1, v0, v1 } => {
            let mu = MARGIN * (u1 - u0);
            let mv = MARGIN * (v1 - v0);
            (
                rng.gen_range(u0 + mu..u1 - mu),
                rng.gen_range(v0 + mv..v1 - mv),
            )
        }
        Domain::Disk {
            center_u,
            center_v,
            radius,
        } => {
            let r = radius * (1.0 - MARGIN) * rng.gen::<f64>().sqrt();
            let angle = rng.gen_range(0.0..TAU);
            (center_u + r * angle.cos(), center_v + r * angle.sin())
        }
    }
}

fn random_unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(rand_distr::StandardNormal),
            rng.sample::<f64, _>(rand_distr::StandardNormal),
            rng.sample::<f64, _>(rand_distr::StandardNormal),
        );
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

/// Samples the pointwise check of [`gauss_bonnet_integrand_identity`] at
/// seeded random interior points with seeded random directions satisfying
/// `|C·N| < 0.9`, and reports the worst sample (lhs = evaluated bracket,
/// rhs = Gauss curvature there).
pub fn check_gb_integrand(
    chart: &Chart,
    spec: &QuadratureSpec,
    seed: u64,
    samples: usize,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<(f64, f64, f64)> = None;
    let mut drawn = 0usize;
    let mut attempts = 0usize;
    while drawn < samples.max(1) {
        attempts += 1;
        if attempts > 1000 * samples.max(1) {
            return Err(Error::HypothesisViolated {
                identity: "gb-integrand".into(),
                detail: "could not draw sample points with |C·N| < 0.9; the chart \
                         normal may be nearly constant across the domain"
                    .into(),
            });
        }
        let (u, v) = random_interior_point(chart.domain(), &mut rng);
        let c = random_unit_vector(&mut rng);
        let frame = chart.frame_at(u, v)?;
        if c.dot(&frame.n).abs() >= 0.9 {
            continue;
        }
        drawn += 1;
        let (quantity, gauss) = bracket_and_gauss(&frame, &c, (u, v))?;
        let difference = (quantity - gauss).abs();
        if worst.map_or(true, |(r, _, _)| difference > r) {
            worst = Some((difference, quantity, gauss));
        }
    }
    let (_, quantity, gauss) = worst.expect("at least one sample");
    Ok(IdentityReport::from_sides(
        "gb-integrand",
        format!("{samples} random (point, direction) samples, seed {seed}"),
        Value::Scalar(quantity),
        Value::Scalar(gauss),
        0.0,
        tolerance.unwrap_or_else(|| default_tolerance("gb-integrand")),
        *spec,
    ))
}

fn vanishing_violation(identity: &str, fr: &FramedPoint, tangent_norm: f64) -> Error {
    let (u, v) = fr.uv;
    Error::HypothesisViolated {
        identity: identity.into(),
        detail: format!(
            "the tangent field vanishes (|V| = {tangent_norm:.3e}) at the \
             quadrature node (u, v) = ({u:.6}, {v:.6})"
        ),
    }
}

/// Verifies `∮ (V̂ × N) · dV̂ = ∫ K dA` for the normalization `V̂` of a
/// nonvanishing tangent field: the rotation 1-form of any unit tangent
/// frame integrates to the total curvature on a patch whose boundary terms
/// are accounted by the left side.
///
/// Vanishing of the projected field at any quadrature node (within
/// `1e-9` of zero, relative to the ambient field's size) is reported as a
/// hypothesis violation.
pub fn check_unit_tangent_identity(
    chart: &Chart,
    field: &TangentField,
    spec: &QuadratureSpec,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    let threshold = |raw: &Vector3<f64>| 1e-9 * (1.0 + raw.norm());
    scalar_identity(
        chart,
        spec,
        "unit-tangent",
        format!("V = {}", field.describe()),
        tolerance.unwrap_or_else(|| default_tolerance("unit-tangent")),
        |bp| {
            let (raw, _) = field.ambient().eval(&bp.frame.x)?;
            let (vt, vt_s) = field.at_boundary(bp)?;
            let norm = vt.norm();
            if norm <= threshold(&raw) {
                return Err(vanishing_violation("unit-tangent", &bp.frame, norm));
            }
            let unit = vt / norm;
            let unit_s = (vt_s - unit * unit.dot(&vt_s)) / norm;
            Ok(unit.cross(&bp.frame.n).dot(&unit_s))
        },
        |fr| {
            let (raw, _) = field.ambient().eval(&fr.x)?;
            let vt = field.at(fr)?;
            if vt.norm() <= threshold(&raw) {
                return Err(vanishing_violation("unit-tangent", fr, vt.norm()));
            }
            Ok(fr.gauss)
        },
    )
}
