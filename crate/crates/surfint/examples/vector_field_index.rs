//! Winding numbers of tangent vector fields and the index balance: the
//! total curvature minus the boundary winding accounts for the zeros of
//! the field, with their indices.
//!
//! ```bash
//! cargo run --example vector_field_index
//! ```

use surfint::catalog::{catalog_entry, preset_field};
use surfint::fields::{field_index, IndexOptions, SingularitySpec, TangentField};
use surfint::identities::{check_index_identity, check_poincare_hopf};
use surfint::quadrature::QuadratureSpec;

fn main() -> surfint::Result<()> {
    let spec = QuadratureSpec::default();
    let options = IndexOptions::default();
    let disk = catalog_entry("disk")?.chart()?;

    // Winding numbers around isolated zeros, measured on a probe circle.
    println!("winding numbers on the flat disk:");
    for preset in ["radial", "e3xX", "conj-square"] {
        let field = TangentField::new(preset_field(preset)?);
        let index = field_index(&disk, &field, (0.0, 0.0), &options)?;
        println!("  {:12} {} has index {index:+}", preset, field.describe());
    }

    // The index balance: boundary winding integral = total curvature
    // minus 2*pi times the sum of indices. The flat disk has no curvature,
    // so the radial field's unit zero forces a -2*pi circulation.
    let origin = [SingularitySpec {
        uv: (0.0, 0.0),
        declared: None,
    }];
    println!("\nindex balance:");
    for preset in ["radial", "conj-square"] {
        let field = TangentField::new(preset_field(preset)?);
        let report = check_index_identity(&disk, &field, &origin, &spec, &options, None)?;
        println!(
            "  {:12} lhs = {:>24}  residual = {:9.2e}  {}",
            preset,
            report.lhs.to_string(),
            report.residual,
            if report.pass { "pass" } else { "FAIL" }
        );
    }

    // The boundary form on a curved patch: chi minus the index sum equals
    // a pure boundary integral of winding plus turning.
    let cap = catalog_entry("cap-2pi5")?.chart()?;
    let rotation = TangentField::new(preset_field("e3xX")?);
    let report = check_poincare_hopf(&cap, &rotation, &origin, &spec, &options, None)?;
    println!(
        "\nboundary index balance on the 2*pi/5 cap: lhs = {}, rhs = {}, residual = {:9.2e}  {}",
        report.lhs,
        report.rhs,
        report.residual,
        if report.pass { "pass" } else { "FAIL" }
    );

    // Declared indices are cross-checked against the computed winding.
    let wrong = [SingularitySpec {
        uv: (0.0, 0.0),
        declared: Some(3),
    }];
    let field = TangentField::new(preset_field("radial")?);
    let err = check_index_identity(&disk, &field, &wrong, &spec, &options, None).unwrap_err();
    println!("\ndeclaring the wrong index is an error: {err}");
    Ok(())
}
