//! Boundary pairings of an ambient scalar's gradient with the surface
//! differentials: both circulations balance surface integrals weighted by
//! the principal-curvature gap and an off-diagonal Hessian term.
//!
//! ```bash
//! cargo run --example hessian_identities
//! ```

use surfint::catalog::{catalog_entry, preset_scalar};
use surfint::fields::ScalarField;
use surfint::identities::check_hessian_identities;
use surfint::quadrature::QuadratureSpec;

fn main() -> surfint::Result<()> {
    let spec = QuadratureSpec::default();

    // A quarter torus is nowhere umbilic: the curvature gap kappa_2 -
    // kappa_1 stays away from zero and both sides are genuinely nonzero.
    let patch = catalog_entry("torus-quarter")?.chart()?;
    println!("torus patch:");
    for source in ["x*y", "z^2", "exp(x)"] {
        let f = ScalarField::parse(source)?;
        for report in check_hessian_identities(&patch, &f, &spec, None)? {
            println!(
                "  {:9} F = {:7}  lhs = {:+.12e}  residual = {:9.2e}  {}",
                report.identity,
                source,
                match report.lhs {
                    surfint::identities::Value::Scalar(s) => s,
                    _ => unreachable!(),
                },
                report.residual,
                if report.pass { "pass" } else { "FAIL" }
            );
        }
    }

    // F = |X|^2/2 has the identity Hessian: the off-diagonal pairing
    // (Hess F . P) . Q vanishes exactly, so both sides collapse to zero.
    let radial = preset_scalar("half-normsq")?;
    println!("\nradial scalar on the same patch (both sides should vanish):");
    for report in check_hessian_identities(&patch, &radial, &spec, None)? {
        println!(
            "  {:9} residual = {:9.2e}  {}",
            report.identity,
            report.residual,
            if report.pass { "pass" } else { "FAIL" }
        );
    }

    // On an umbilic surface the curvature gap is zero: the surface side is
    // exactly zero by construction, and the boundary side must agree.
    let cap = catalog_entry("cap-pi3")?.chart()?;
    println!("\numbilic cap (surface side identically zero):");
    for report in check_hessian_identities(&cap, &ScalarField::parse("x*y")?, &spec, None)? {
        println!(
            "  {:9} rhs = {}  lhs residual = {:9.2e}  {}",
            report.identity,
            report.rhs,
            report.residual,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
