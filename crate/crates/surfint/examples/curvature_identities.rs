//! Integral identities tying a vector field's boundary circulation to
//! curvature-weighted surface integrals, plus the classical moment and
//! support-function relations they specialize to.
//!
//! ```bash
//! cargo run --example curvature_identities
//! ```

use surfint::catalog::catalog_entry;
use surfint::fields::AmbientField;
use surfint::identities::{
    check_curvature_identity, check_divergence_identity, check_minkowski,
    check_moment_identities, check_stokes_scalar, IdentityReport,
};
use surfint::fields::ScalarField;
use surfint::quadrature::QuadratureSpec;

fn show(report: &IdentityReport) {
    println!(
        "  {:14} lhs = {:>24}  residual = {:9.2e}  {}",
        report.identity,
        report.lhs.to_string(),
        report.residual,
        if report.pass { "pass" } else { "FAIL" }
    );
}

fn main() -> surfint::Result<()> {
    let spec = QuadratureSpec::default();
    let cap = catalog_entry("cap-pi3")?.chart()?;

    // The two circulation identities: for any ambient field V, the
    // boundary circulation of V x N balances a surface integral weighted
    // by mean curvature (divergence form) or by the principal curvatures
    // (curvature form). For the constant vertical field on a cap of
    // opening angle pi/3 both sides come to 2*pi*sin(pi/3)^2 = 3*pi/2.
    let vertical = AmbientField::parse(["0", "0", "1"])?;
    println!("circulation identities on the pi/3 cap, V = {}:", vertical.describe());
    show(&check_divergence_identity(&cap, &vertical, &spec, None)?);
    show(&check_curvature_identity(&cap, &vertical, &spec, None)?);

    let field = AmbientField::parse(["x*y", "z", "-x"])?;
    println!("\nsame identities for a generic field V = {}:", field.describe());
    show(&check_divergence_identity(&cap, &field, &spec, None)?);
    show(&check_curvature_identity(&cap, &field, &spec, None)?);

    // Specializing V to constants gives the vector-valued moment
    // relations: boundary moments of N against mean and Gauss curvature.
    println!("\nmoment relations on the same cap:");
    for report in check_moment_identities(&cap, &spec, None)? {
        show(&report);
    }

    // Support-function relations: scalar identities relating X x N on the
    // boundary to mean and Gauss curvature against the support X . N. On
    // closed surfaces the boundary side is identically zero, which forces
    // the classical closed-surface integral formulas.
    let torus = catalog_entry("torus")?.chart()?;
    println!("\nsupport-function relations on the closed torus:");
    for report in check_minkowski(&torus, &spec, None)? {
        show(&report);
    }

    // The scalar surface-Stokes pairing behind all of these: an exact
    // 1-form f dg integrated around the boundary against the tangential
    // Jacobian pairing inside.
    let f = ScalarField::parse("x*z")?;
    let g = ScalarField::parse("y^2")?;
    println!("\nscalar pairing on the cap, f = x*z, g = y^2:");
    show(&check_stokes_scalar(&cap, &f, &g, &spec, None)?);
    Ok(())
}
