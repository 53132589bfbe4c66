//! Vector and scalar fields on R³, their restriction to surfaces, and
//! winding numbers of tangent fields around their zeros.

use crate::expr::Expression;
use crate::geometry::{BoundaryPoint, Chart, FramedPoint};
use crate::{Error, Result};
use nalgebra::{Matrix3, Vector3};

/// A vector field on ambient space: three expressions in `(x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientField {
    components: [Expression; 3],
}

impl AmbientField {
    pub fn new(components: [Expression; 3]) -> Result<AmbientField> {
        for (i, c) in components.iter().enumerate() {
            if c.variables() != ["x", "y", "z"] {
                return Err(Error::InvalidField {
                    detail: format!(
                        "component {} must be an expression in (x, y, z), got variables ({})",
                        i,
                        c.variables().join(", ")
                    ),
                });
            }
        }
        Ok(AmbientField { components })
    }

    pub fn parse(components: [&str; 3]) -> Result<AmbientField> {
        let [x, y, z] = components;
        AmbientField::new([
            Expression::parse(x, &["x", "y", "z"])?,
            Expression::parse(y, &["x", "y", "z"])?,
            Expression::parse(z, &["x", "y", "z"])?,
        ])
    }

    /// The constant field with the given value.
    pub fn constant(value: Vector3<f64>) -> AmbientField {
        let fmt = |c: f64| format!("{c}");
        AmbientField::parse([&fmt(value[0]), &fmt(value[1]), &fmt(value[2])])
            .expect("numeric literals always parse")
    }

    /// Value and Jacobian (`J[(i, j)] = ∂V_i/∂x_j`) at a point.
    pub fn eval(&self, at: &Vector3<f64>) -> Result<(Vector3<f64>, Matrix3<f64>)> {
        let coords = [at[0], at[1], at[2]];
        let mut value = Vector3::zeros();
        let mut jacobian = Matrix3::zeros();
        for (i, c) in self.components.iter().enumerate() {
            let jet = c.eval_jet2(&coords)?;
            value[i] = jet.value();
            for j in 0..3 {
                jacobian[(i, j)] = jet.grad(j);
            }
        }
        Ok((value, jacobian))
    }

    /// Directional derivative `∇_w V = J w` at a point.
    pub fn directional_derivative(
        &self,
        at: &Vector3<f64>,
        w: &Vector3<f64>,
    ) -> Result<Vector3<f64>> {
        let (_, jacobian) = self.eval(at)?;
        Ok(jacobian * w)
    }

    /// Formula display `(f_x, f_y, f_z)`.
    pub fn describe(&self) -> String {
        format!(
            "({}, {}, {})",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// Value, gradient, and Hessian of a scalar field at a point.
#[derive(Debug, Clone)]
pub struct ScalarJet {
    pub value: f64,
    pub gradient: Vector3<f64>,
    pub hessian: Matrix3<f64>,
}

/// A scalar field on ambient space: one expression in `(x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    expr: Expression,
}

impl ScalarField {
    pub fn new(expr: Expression) -> Result<ScalarField> {
        if expr.variables() != ["x", "y", "z"] {
            return Err(Error::InvalidField {
                detail: format!(
                    "scalar field must be an expression in (x, y, z), got variables ({})",
                    expr.variables().join(", ")
                ),
            });
        }
        Ok(ScalarField { expr })
    }

    pub fn parse(source: &str) -> Result<ScalarField> {
        ScalarField::new(Expression::parse(source, &["x", "y", "z"])?)
    }

    pub fn eval(&self, at: &Vector3<f64>) -> Result<ScalarJet> {
        let jet = self.expr.eval_jet2(&[at[0], at[1], at[2]])?;
        let mut hessian = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                hessian[(i, j)] = jet.hess(i, j);
            }
        }
        Ok(ScalarJet {
            value: jet.value(),
            gradient: Vector3::new(jet.grad(0), jet.grad(1), jet.grad(2)),
            hessian,
        })
    }

    pub fn describe(&self) -> String {
        self.expr.to_string()
    }
}

/// An ambient field viewed as a tangent field on a surface: at each point
/// the value is projected onto the tangent plane, `V_T = V - N (N·V)`.
/// Fields that are already tangent are unchanged.
#[derive(Debug, Clone)]
pub struct TangentField {
    ambient: AmbientField,
}

impl TangentField {
    pub fn new(ambient: AmbientField) -> TangentField {
        TangentField { ambient }
    }

    pub fn ambient(&self) -> &AmbientField {
        &self.ambient
    }

    pub fn describe(&self) -> String {
        self.ambient.describe()
    }

    /// Projected value at a surface point.
    pub fn at(&self, frame: &FramedPoint) -> Result<Vector3<f64>> {
        let (raw, _) = self.ambient.eval(&frame.x)?;
        Ok(raw - frame.n * frame.n.dot(&raw))
    }

    /// Projected value and its arc-length derivative along the boundary.
    ///
    /// Differentiating `V_T = V - N (N·V)` along the curve needs the
    /// derivative of the normal, which the boundary point carries as `N_s`.
    pub fn at_boundary(&self, bp: &BoundaryPoint) -> Result<(Vector3<f64>, Vector3<f64>)> {
        let frame = &bp.frame;
        let (raw, jacobian) = self.ambient.eval(&frame.x)?;
        let raw_s = jacobian * bp.x_s;
        let normal_part = frame.n.dot(&raw);
        let value = raw - frame.n * normal_part;
        let value_s = raw_s
            - bp.n_s * normal_part
            - frame.n * (bp.n_s.dot(&raw) + frame.n.dot(&raw_s));
        Ok((value, value_s))
    }
}

/// A vector field evaluated along a surface: either a genuine ambient
/// field restricted to the patch, or one of the two tautological surface
/// fields (the position `X` and the unit normal `N`). The latter are what
/// make pairings like `∮ V · dN` expressible in the same framework.
#[derive(Debug, Clone)]
pub enum SurfaceVectorField {
    Ambient(AmbientField),
    /// The unit normal `N`; its tangential derivatives come from the
    /// principal curvatures (`∇_P N = -κ₁ P`, `∇_Q N = -κ₂ Q`).
    Normal,
    /// The position `X`; its tangential derivatives are the directions
    /// themselves.
    Position,
}

impl SurfaceVectorField {
    /// Value and tangential directional derivatives `(V, ∇_P V, ∇_Q V)` at
    /// a surface point.
    pub fn at_frame(
        &self,
        frame: &FramedPoint,
    ) -> Result<(Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
        Ok(match self {
            SurfaceVectorField::Ambient(field) => {
                let (value, jacobian) = field.eval(&frame.x)?;
                (value, jacobian * frame.p, jacobian * frame.q)
            }
            SurfaceVectorField::Normal => (
                frame.n,
                -frame.kappa1 * frame.p,
                -frame.kappa2 * frame.q,
            ),
            SurfaceVectorField::Position => (frame.x, frame.p, frame.q),
        })
    }

    /// Value and arc-length derivative `(V, dV/ds)` along the boundary.
    pub fn at_boundary(&self, bp: &BoundaryPoint) -> Result<(Vector3<f64>, Vector3<f64>)> {
        Ok(match self {
            SurfaceVectorField::Ambient(field) => {
                let (value, jacobian) = field.eval(&bp.frame.x)?;
                (value, jacobian * bp.x_s)
            }
            SurfaceVectorField::Normal => (bp.frame.n, bp.n_s),
            SurfaceVectorField::Position => (bp.frame.x, bp.x_s),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            SurfaceVectorField::Ambient(field) => field.describe(),
            SurfaceVectorField::Normal => "N".into(),
            SurfaceVectorField::Position => "X".into(),
        }
    }
}

/// A claimed zero of a tangent field, with an optionally declared index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySpec {
    pub uv: (f64, f64),
    /// Index asserted by the caller. Required where the winding cannot be
    /// computed (chart-edge points of closed charts); elsewhere it is
    /// cross-checked against the computed winding.
    pub declared: Option<i32>,
}

/// A singularity with its final index, after computing and/or checking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedSingularity {
    pub uv: (f64, f64),
    pub index: i32,
    /// The computed winding, when the probe circle fit into the domain.
    pub computed: Option<i32>,
}

/// Probe-circle parameters for winding-number computation.
#[derive(Debug, Clone, Copy)]
pub struct IndexOptions {
    /// Parameter-plane radius of the probe circle; shrunk automatically to
    /// half the distance to the domain edge when needed.
    pub radius: f64,
    /// Sample count around the circle.
    pub samples: usize,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions {
            radius: 0.05,
            samples: 720,
        }
    }
}

/// Smallest usable probe radius; closer to the edge than twice this, the
/// winding is not computable.
const MIN_PROBE_RADIUS: f64 = 1e-4;
/// How far from an integer the accumulated winding may drift before it is
/// rejected as unreliable.
const WINDING_TOLERANCE: f64 = 0.05;

/// Winding number of the projected field around `(u, v)`, measured on a
/// parameter-plane circle against the reference tangent frame
/// `(X_u/|X_u|, N × X_u/|X_u|)`.
///
/// The result is the signed number of turns the field makes relative to
/// that frame: the index of an isolated interior zero. Fails if the circle
/// cannot fit inside the domain, if the field (numerically) vanishes on the
/// circle, or if the accumulated angle is not close to a whole number of
/// turns.
pub fn field_index(
    chart: &Chart,
    field: &TangentField,
    at: (f64, f64),
    options: &IndexOptions,
) -> Result<i32> {
    let (u0, v0) = at;
    let margin = chart.domain().interior_distance(u0, v0);
    let radius = options.radius.min(0.5 * margin);
    if !(radius >= MIN_PROBE_RADIUS) {
        return Err(Error::InvalidSingularity {
            u: u0,
            v: v0,
            reason: format!(
                "a probe circle of radius {MIN_PROBE_RADIUS:.0e} does not fit inside the domain \
                 (distance to the edge is {margin:.3e})"
            ),
        });
    }
    let samples = options.samples.max(8);

    let mut winding = crate::quadrature::Compensated::default();
    let mut first_angle = None;
    let mut prev_angle: f64 = 0.0;
    for i in 0..samples {
        let phi = std::f64::consts::TAU * i as f64 / samples as f64;
        let u = u0 + radius * phi.cos();
        let v = v0 + radius * phi.sin();
        let frame = chart.frame_at(u, v)?;
        let (raw, _) = field.ambient.eval(&frame.x)?;
        let tangent = raw - frame.n * frame.n.dot(&raw);
        if tangent.norm() <= 1e-12 * (1.0 + raw.norm()) {
            return Err(Error::FieldVanishesOnCircle {
                u: u0,
                v: v0,
                norm: tangent.norm(),
            });
        }
        let e1 = frame.x_u / frame.x_u.norm();
        let e2 = frame.n.cross(&e1);
        let angle = tangent.dot(&e2).atan2(tangent.dot(&e1));
        match first_angle {
            None => first_angle = Some(angle),
            Some(_) => winding.add(wrap_to_pi(angle - prev_angle)),
        }
        prev_angle = angle;
    }
    winding.add(wrap_to_pi(first_angle.unwrap() - prev_angle));

    let turns = winding.total() / std::f64::consts::TAU;
    let nearest = turns.round();
    if (turns - nearest).abs() > WINDING_TOLERANCE {
        return Err(Error::NonIntegerWinding {
            winding: turns,
            tolerance: WINDING_TOLERANCE,
        });
    }
    Ok(nearest as i32)
}

/// Maps an angle difference into `(-π, π]`.
/// Reduces an angle to `(-π, π]`.
pub(crate) fn wrap_to_pi(angle: f64) -> f64 {
    let mut a = angle % std::f64::consts::TAU;
    if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    } else if a <= -std::f64::consts::PI {
        a += std::f64::consts::TAU;
    }
    a
}

/// Resolves a list of claimed singularities to definite indices.
///
/// A singularity with enough clearance from every chart edge gets its
/// winding computed on a probe circle; a declared index, if present, must
/// agree. Points too close to the *live* boundary of an open chart are
/// rejected. A singularity may, however, sit on a pinched, seam, or
/// periodic edge (like the poles of a latitude–longitude parametrization,
/// which are ordinary surface points the chart happens to pinch); there the
/// winding cannot be measured on a parameter circle, so a declared index is
/// required instead.
pub fn resolve_indices(
    chart: &Chart,
    field: &TangentField,
    singularities: &[SingularitySpec],
    options: &IndexOptions,
) -> Result<Vec<ResolvedSingularity>> {
    let clearance = 2.0 * MIN_PROBE_RADIUS;
    let mut resolved = Vec::with_capacity(singularities.len());
    for spec in singularities {
        let (u, v) = spec.uv;
        let margin = chart.domain().interior_distance(u, v);
        if margin < 0.0 {
            return Err(Error::InvalidSingularity {
                u,
                v,
                reason: "outside the parameter domain".into(),
            });
        }
        // Clearance is measured to the live boundary, not the parameter
        // rectangle: edges that were pinched to a point or glued shut are
        // interior to the surface.
        if chart
            .boundary()
            .iter()
            .any(|seg| seg.distance_to(spec.uv) < clearance)
        {
            return Err(Error::InvalidSingularity {
                u,
                v,
                reason: format!(
                    "on or too close to the patch boundary; the winding probe needs \
                     parameter clearance {clearance:.2e}"
                ),
            });
        }
        if margin >= clearance {
            let computed = field_index(chart, field, spec.uv, options)?;
            if let Some(declared) = spec.declared {
                if declared != computed {
                    return Err(Error::IndexMismatch {
                        u,
                        v,
                        computed,
                        declared,
                    });
                }
            }
            resolved.push(ResolvedSingularity {
                uv: spec.uv,
                index: computed,
                computed: Some(computed),
            });
        } else {
            let Some(declared) = spec.declared else {
                return Err(Error::InvalidSingularity {
                    u,
                    v,
                    reason: "the point sits on a chart edge, where the winding cannot be \
                             computed; declare its index"
                        .into(),
                });
            };
            resolved.push(ResolvedSingularity {
                uv: spec.uv,
                index: declared,
                computed: None,
            });
        }
    }
    Ok(resolved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ChartOptions, Domain};
    use std::f64::consts::{PI, TAU};

    fn flat_disk() -> Chart {
        Chart::parse(
            ["u", "v", "0"],
            Domain::disk((0.0, 0.0), 1.0),
            ChartOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let field = AmbientField::parse(["x*y - z^2", "sin(x)*z", "exp(y)"]).unwrap();
        let at = Vector3::new(0.4, -0.3, 0.8);
        let (_, jacobian) = field.eval(&at).unwrap();
        let h = 1e-6;
        for j in 0..3 {
            let mut ap = at;
            let mut am = at;
            ap[j] += h;
            am[j] -= h;
            let (vp, _) = field.eval(&ap).unwrap();
            let (vm, _) = field.eval(&am).unwrap();
            let fd = (vp - vm) / (2.0 * h);
            for i in 0..3 {
                assert!(
                    (jacobian[(i, j)] - fd[i]).abs() < 1e-8,
                    "J[{i}][{j}] = {} vs {}",
                    jacobian[(i, j)],
                    fd[i]
                );
            }
        }
    }

    #[test]
    fn scalar_jet_matches_closed_form() {
        // F = (x² + y² + z²)/2: ∇F = X, ∇²F = I.
        let field = ScalarField::parse("(x^2 + y^2 + z^2)/2").unwrap();
        let at = Vector3::new(1.0, -2.0, 0.5);
        let jet = field.eval(&at).unwrap();
        assert!((jet.value - at.norm_squared() / 2.0).abs() < 1e-15);
        assert!((jet.gradient - at).norm() < 1e-15);
        assert!((jet.hessian - Matrix3::identity()).norm() < 1e-15);
    }

    #[test]
    fn tangent_projection_on_sphere() {
        let sphere = Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, PI), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        let field = TangentField::new(AmbientField::parse(["1", "0", "0"]).unwrap());
        let frame = sphere.frame_at(1.0, 2.0).unwrap();
        let v = field.at(&frame).unwrap();
        assert!(v.dot(&frame.n).abs() < 1e-14);
        let expect = Vector3::new(1.0, 0.0, 0.0) - frame.n * frame.n[0];
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn boundary_derivative_of_tangent_field_matches_fd() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["x*y", "y - x^2", "x"]).unwrap());
        let t = 0.3;
        let bp = disk.boundary_point(t).unwrap();
        let (_, vs) = field.at_boundary(&bp).unwrap();
        // Finite difference in the boundary parameter, then convert by the
        // speed (ds = speed · dt).
        let h = 1e-6;
        let vp = field.at(&disk.boundary_point(t + h).unwrap().frame).unwrap();
        let vm = field.at(&disk.boundary_point(t - h).unwrap().frame).unwrap();
        let fd = (vp - vm) / (2.0 * h * bp.speed);
        assert!((vs - fd).norm() < 1e-7, "{vs:?} vs {fd:?}");
    }

    #[test]
    fn radial_field_has_index_one() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["x", "y", "0"]).unwrap());
        let index =
            field_index(&disk, &field, (0.0, 0.0), &IndexOptions::default()).unwrap();
        assert_eq!(index, 1);
    }

    #[test]
    fn conjugate_square_field_has_index_minus_two() {
        let disk = flat_disk();
        let field =
            TangentField::new(AmbientField::parse(["x^2 - y^2", "-2*x*y", "0"]).unwrap());
        let index =
            field_index(&disk, &field, (0.0, 0.0), &IndexOptions::default()).unwrap();
        assert_eq!(index, -2);
    }

    #[test]
    fn nonvanishing_field_has_index_zero() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["1", "0", "0"]).unwrap());
        let index =
            field_index(&disk, &field, (0.3, 0.1), &IndexOptions::default()).unwrap();
        assert_eq!(index, 0);
    }

    #[test]
    fn index_is_stable_under_probe_refinement() {
        let disk = flat_disk();
        let field =
            TangentField::new(AmbientField::parse(["x^2 - y^2", "-2*x*y", "0"]).unwrap());
        for options in [
            IndexOptions { radius: 0.025, samples: 720 },
            IndexOptions { radius: 0.05, samples: 1440 },
            IndexOptions { radius: 0.1, samples: 360 },
        ] {
            assert_eq!(field_index(&disk, &field, (0.0, 0.0), &options).unwrap(), -2);
        }
    }

    #[test]
    fn vanishing_on_circle_is_detected() {
        let disk = flat_disk();
        // Vanishes exactly on the radius-0.05 circle the probe uses.
        let field =
            TangentField::new(AmbientField::parse(["x^2 + y^2 - 0.0025", "0", "0"]).unwrap());
        let err =
            field_index(&disk, &field, (0.0, 0.0), &IndexOptions::default()).unwrap_err();
        assert!(matches!(err, Error::FieldVanishesOnCircle { .. }));
    }

    #[test]
    fn probe_circle_must_fit() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["x", "y", "0"]).unwrap());
        let err = field_index(
            &disk,
            &field,
            (1.0 - 1e-5, 0.0),
            &IndexOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));
    }

    #[test]
    fn declared_index_is_cross_checked() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["x", "y", "0"]).unwrap());
        let specs = [SingularitySpec {
            uv: (0.0, 0.0),
            declared: Some(2),
        }];
        let err =
            resolve_indices(&disk, &field, &specs, &IndexOptions::default()).unwrap_err();
        assert!(matches!(err, Error::IndexMismatch { computed: 1, declared: 2, .. }));
    }

    #[test]
    fn closed_chart_edge_singularity_needs_declaration() {
        let sphere = Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, PI), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        let field = TangentField::new(AmbientField::parse(["-y", "x", "0"]).unwrap());
        // Pole at u = 0 sits on a chart edge: no probe circle fits.
        let undeclared = [SingularitySpec {
            uv: (0.0, 0.0),
            declared: None,
        }];
        let err = resolve_indices(&sphere, &field, &undeclared, &IndexOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));

        let declared = [SingularitySpec {
            uv: (0.0, 0.0),
            declared: Some(1),
        }];
        let resolved =
            resolve_indices(&sphere, &field, &declared, &IndexOptions::default()).unwrap();
        assert_eq!(resolved[0].index, 1);
        assert_eq!(resolved[0].computed, None);
    }

    #[test]
    fn open_chart_rejects_edge_singularities() {
        let disk = flat_disk();
        let field = TangentField::new(AmbientField::parse(["x", "y", "0"]).unwrap());
        let outside = [SingularitySpec {
            uv: (1.5, 0.0),
            declared: Some(0),
        }];
        let err =
            resolve_indices(&disk, &field, &outside, &IndexOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));

        let on_rim = [SingularitySpec {
            uv: (1.0, 0.0),
            declared: Some(0),
        }];
        let err =
            resolve_indices(&disk, &field, &on_rim, &IndexOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));
    }

    #[test]
    fn pinched_edge_singularity_takes_a_declared_index() {
        // Latitude–longitude cap: the u = 0 edge collapses to the pole, an
        // ordinary surface point, while u = pi/3 is the live rim.
        let cap = Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, PI / 3.0), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!cap.is_closed());
        let field = TangentField::new(AmbientField::parse(["-y", "x", "0"]).unwrap());

        let declared = [SingularitySpec {
            uv: (0.0, 0.0),
            declared: Some(1),
        }];
        let resolved =
            resolve_indices(&cap, &field, &declared, &IndexOptions::default()).unwrap();
        assert_eq!(resolved[0].index, 1);
        assert_eq!(resolved[0].computed, None);

        // Without a declaration the pinched point is still unresolvable.
        let undeclared = [SingularitySpec {
            uv: (0.0, 0.0),
            declared: None,
        }];
        let err = resolve_indices(&cap, &field, &undeclared, &IndexOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));

        // On the live rim the point is rejected even with a declaration.
        let on_rim = [SingularitySpec {
            uv: (PI / 3.0, 1.0),
            declared: Some(0),
        }];
        let err =
            resolve_indices(&cap, &field, &on_rim, &IndexOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidSingularity { .. }));
    }
}
