//! Structural invariants every check must satisfy, independent of the
//! particular surface: boundary orientation antisymmetry, stability of
//! residuals under quadrature refinement, and independence from the
//! arbitrary frame choice at umbilic points.

use nalgebra::Vector3;
use proptest::prelude::*;
use surfint::catalog::{catalog_entry, preset_field, preset_scalar};
use surfint::fields::{AmbientField, ScalarField, TangentField};
use surfint::geometry::{BoundarySegment, Chart, ChartOptions, Domain, UmbilicFrameMode};
use surfint::identities::{
    check_curvature_identity, check_gauss_bonnet, check_hessian_identities, check_stokes_scalar,
    check_unit_tangent_identity, gauss_bonnet_integrand_identity, liouville_residual,
    IdentityReport,
};
use surfint::quadrature::{boundary_integral_over_segments, QuadratureSpec};

fn cap_pi3(mode: UmbilicFrameMode) -> Chart {
    // Stereographic chart of the spherical cap of opening angle pi/3.
    let radius = (std::f64::consts::PI / 6.0).tan();
    Chart::parse(
        [
            "2*u/(1 + u^2 + v^2)",
            "2*v/(1 + u^2 + v^2)",
            "(1 - u^2 - v^2)/(1 + u^2 + v^2)",
        ],
        Domain::disk((0.0, 0.0), radius),
        ChartOptions {
            umbilic_mode: mode,
            ..Default::default()
        },
    )
    .unwrap()
}

#[test]
fn reversing_the_boundary_negates_circulation_and_turning_integrals() {
    let chart = catalog_entry("cap-pi3").unwrap().chart().unwrap();
    let spec = QuadratureSpec::default();
    let field = preset_field("e3").unwrap();

    let forward: Vec<BoundarySegment> = chart.boundary().to_vec();
    let mut backward: Vec<BoundarySegment> = forward.iter().map(|s| s.reversed()).collect();
    backward.reverse();

    // Circulation-style integrand of the divergence check: (V x N) . X_s.
    let mut circulation = |bp: &surfint::geometry::BoundaryPoint| {
        let (v, _) = field.eval(&bp.frame.x)?;
        Ok(v.cross(&bp.frame.n).dot(&bp.x_s))
    };
    let a: f64 =
        boundary_integral_over_segments(&chart, &forward, &spec, &mut circulation).unwrap();
    let b: f64 =
        boundary_integral_over_segments(&chart, &backward, &spec, &mut circulation).unwrap();
    assert!(a.abs() > 1.0, "integral should be nontrivial, got {a}");
    assert!((a + b).abs() <= 1e-12 * a.abs(), "a = {a}, b = {b}");

    // Turning integrand of the curvature total: kappa_g.
    let mut turning = |bp: &surfint::geometry::BoundaryPoint| Ok(bp.kappa_g);
    let ta: f64 =
        boundary_integral_over_segments(&chart, &forward, &spec, &mut turning).unwrap();
    let tb: f64 =
        boundary_integral_over_segments(&chart, &backward, &spec, &mut turning).unwrap();
    assert!(ta.abs() > 1.0);
    assert!((ta + tb).abs() <= 1e-12 * ta.abs(), "ta = {ta}, tb = {tb}");
}

/// Residuals must not grow when every quadrature panel count is doubled.
#[test]
fn refinement_does_not_worsen_residuals() {
    let base = QuadratureSpec::default();
    let fine = base.refined();
    let field = AmbientField::parse(["x*y", "z", "-x"]).unwrap();
    let scalar = preset_scalar("expx1").unwrap();

    let cases: Vec<(&str, Box<dyn Fn(&QuadratureSpec) -> IdentityReport>)> = vec![
        (
            "curvature-weighted circulation on a cap",
            Box::new(|spec: &QuadratureSpec| {
                let chart = catalog_entry("cap-pi3").unwrap().chart().unwrap();
                check_curvature_identity(&chart, &field, spec, None).unwrap()
            }),
        ),
        (
            "curvature total on the monkey saddle",
            Box::new(|spec: &QuadratureSpec| {
                let chart = catalog_entry("monkey-saddle").unwrap().chart().unwrap();
                check_gauss_bonnet(&chart, spec, None).unwrap()
            }),
        ),
        (
            "hessian boundary pairing on a torus patch",
            Box::new(|spec: &QuadratureSpec| {
                let chart = catalog_entry("torus-quarter").unwrap().chart().unwrap();
                check_hessian_identities(&chart, &scalar, spec, None)
                    .unwrap()
                    .remove(0)
            }),
        ),
    ];

    for (what, run) in cases {
        let coarse = run(&base);
        let refined = run(&fine);
        assert!(
            refined.residual <= coarse.residual + 1e-12,
            "{what}: refinement worsened the residual: {} -> {}",
            coarse.residual,
            refined.residual
        );
    }
}

/// The cap is umbilic everywhere, so every principal frame is an arbitrary
/// choice; results must not depend on it.
#[test]
fn randomized_umbilic_frames_leave_reports_unchanged() {
    let spec = QuadratureSpec::default();
    let deterministic = cap_pi3(UmbilicFrameMode::Deterministic);
    let field = AmbientField::parse(["x*y", "z", "-x"]).unwrap();
    let scalar = preset_scalar("x1x2").unwrap();
    let tangent = TangentField::new(preset_field("e1").unwrap());

    for seed in [3u64, 17] {
        let randomized = cap_pi3(UmbilicFrameMode::Randomized { seed });
        let pairs = [
            (
                check_curvature_identity(&deterministic, &field, &spec, None).unwrap(),
                check_curvature_identity(&randomized, &field, &spec, None).unwrap(),
            ),
            (
                check_unit_tangent_identity(&deterministic, &tangent, &spec, None).unwrap(),
                check_unit_tangent_identity(&randomized, &tangent, &spec, None).unwrap(),
            ),
            (
                check_hessian_identities(&deterministic, &scalar, &spec, None)
                    .unwrap()
                    .remove(0),
                check_hessian_identities(&randomized, &scalar, &spec, None)
                    .unwrap()
                    .remove(0),
            ),
        ];
        for (det, rand) in pairs {
            assert!(
                det.lhs.distance(&rand.lhs) <= 1e-10,
                "{} lhs moved under a random umbilic frame (seed {seed})",
                det.identity
            );
            assert!(
                det.rhs.distance(&rand.rhs) <= 1e-10,
                "{} rhs moved under a random umbilic frame (seed {seed})",
                det.identity
            );
        }

        // Pointwise curvature comparison, likewise frame-sensitive inside.
        let c = Vector3::new(0.3, -0.4, 0.8).normalize();
        let at = (0.21, -0.13);
        let d = gauss_bonnet_integrand_identity(&deterministic, &c, at).unwrap();
        let r = gauss_bonnet_integrand_identity(&randomized, &c, at).unwrap();
        assert!((d - r).abs() <= 1e-10, "pointwise residual moved: {d} vs {r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Swapping the two scalars negates the boundary side of the surface
    /// Stokes pairing, for arbitrary quadratics.
    #[test]
    fn stokes_pairing_is_antisymmetric(
        a in -2i32..=2, b in -2i32..=2, c in -2i32..=2,
        d in -2i32..=2, e in -2i32..=2, g in -2i32..=2,
    ) {
        let chart = catalog_entry("cap-pi6").unwrap().chart().unwrap();
        let spec = QuadratureSpec::default();
        let f1 = ScalarField::parse(&format!("({a})*x*y + ({b})*z^2 + ({c})*x")).unwrap();
        let f2 = ScalarField::parse(&format!("({d})*y*z + ({e})*x^2 + ({g})*y")).unwrap();
        let fwd = check_stokes_scalar(&chart, &f1, &f2, &spec, None).unwrap();
        let rev = check_stokes_scalar(&chart, &f2, &f1, &spec, None).unwrap();
        prop_assert!(fwd.pass, "forward residual {}", fwd.residual);
        prop_assert!(rev.pass, "reversed residual {}", rev.residual);
        let (surfint::identities::Value::Scalar(l1), surfint::identities::Value::Scalar(l2)) =
            (&fwd.lhs, &rev.lhs) else { panic!("scalar reports expected") };
        let scale = 1.0 + l1.abs() + l2.abs();
        prop_assert!((l1 + l2).abs() <= 1e-10 * scale, "lhs {l1} vs swapped {l2}");
    }

    /// The boundary rotation-rate comparison holds pointwise for any
    /// direction safely transversal to the cap's rim.
    #[test]
    fn rotation_rate_matches_for_random_directions(
        alpha in 0.0f64..0.25,
        beta in 0.0f64..std::f64::consts::TAU,
        t in 0.0f64..1.0,
    ) {
        let chart = catalog_entry("cap-pi3").unwrap().chart().unwrap();
        let c = Vector3::new(
            alpha.sin() * beta.cos(),
            alpha.sin() * beta.sin(),
            alpha.cos(),
        );
        let residual = liouville_residual(&chart, &c, t).unwrap();
        prop_assert!(residual <= 1e-6, "residual {residual} at t = {t}");
    }
}
