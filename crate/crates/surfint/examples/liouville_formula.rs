//! The boundary rotation-rate comparison: the angle a boundary curve makes
//! against the level directions of a fixed axis rotates at a rate
//! determined by the geodesic curvature plus a normal-drift correction.
//!
//! ```bash
//! cargo run --example liouville_formula
//! ```

use nalgebra::Vector3;
use surfint::catalog::catalog_entry;
use surfint::identities::{check_liouville, liouville_residual};
use surfint::quadrature::QuadratureSpec;
use surfint::Error;

fn main() -> surfint::Result<()> {
    let spec = QuadratureSpec::default();
    let cap = catalog_entry("cap-pi3")?.chart()?;

    // Pointwise: at a few boundary points, compare the numerically
    // differentiated angle rate against its curvature expression.
    let c = Vector3::z();
    println!("pointwise residuals on the pi/3 cap, axis C = e3:");
    for t in [0.05, 0.3, 0.62, 0.9] {
        println!("  t = {t:4.2}: {:9.2e}", liouville_residual(&cap, &c, t)?);
    }

    // Full sweep (at least 512 boundary points), reporting the worst one.
    for c in [Vector3::z(), Vector3::new(0.3f64.sin(), 0.0, 0.3f64.cos())] {
        let report = check_liouville(&cap, &c, &spec, None)?;
        println!(
            "sweep with C = ({:+.3}, {:+.3}, {:+.3}): worst residual {:9.2e}  {}",
            c.x,
            c.y,
            c.z,
            report.residual,
            if report.pass { "pass" } else { "FAIL" }
        );
    }

    // The comparison needs the axis to stay transversal to the surface
    // normal along the boundary; where C is (numerically) normal, the
    // reference angle is undefined and the check refuses to continue.
    let disk = catalog_entry("disk")?.chart()?;
    match check_liouville(&disk, &Vector3::z(), &spec, None) {
        Err(Error::HypothesisViolated { detail, .. }) => {
            println!("flat disk with C = e3 is refused: {detail}");
        }
        other => println!("unexpected outcome: {other:?}"),
    }
    Ok(())
}
