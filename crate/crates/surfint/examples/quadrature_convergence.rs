//! Composite Gauss–Legendre quadrature over a chart: watch surface and
//! boundary integrals converge as the rule is refined, with the built-in
//! error estimate alongside the true error.
//!
//! ```bash
//! cargo run --example quadrature_convergence
//! ```

use surfint::catalog::catalog_entry;
use surfint::quadrature::{boundary_integral, surface_integral, QuadratureSpec};

fn main() -> surfint::Result<()> {
    // Spherical cap of opening angle pi/3: area 2*pi*(1 - cos(pi/3)) = pi,
    // boundary length 2*pi*sin(pi/3).
    let chart = catalog_entry("cap-pi3")?.chart()?;
    let true_area = std::f64::consts::PI;
    let true_length = std::f64::consts::TAU * (std::f64::consts::PI / 3.0).sin();

    println!("surface area of the pi/3 cap (exact: {true_area:.15})");
    println!("  nodes   panels   computed              true error   estimated error");
    for (panels, nodes) in [(2, 4), (4, 6), (8, 12), (16, 16)] {
        let spec = QuadratureSpec {
            panels_u: panels,
            panels_v: panels,
            nodes_per_panel: nodes,
            boundary_panels: 2 * panels,
        };
        let area = surface_integral(&chart, &spec, |_f| Ok(1.0))?;
        println!(
            "  {nodes:5}   {panels:6}   {:.15}   {:9.2e}    {:9.2e}",
            area.value,
            (area.value - true_area).abs(),
            area.est_error
        );
    }

    println!("\nboundary length (exact: {true_length:.15})");
    for (panels, nodes) in [(2, 4), (4, 6), (8, 12), (16, 16)] {
        let spec = QuadratureSpec {
            panels_u: panels,
            panels_v: panels,
            nodes_per_panel: nodes,
            boundary_panels: 2 * panels,
        };
        let length = boundary_integral(&chart, &spec, |_bp| Ok(1.0))?;
        println!(
            "  {nodes:5}   {panels:6}   {:.15}   {:9.2e}    {:9.2e}",
            length.value,
            (length.value - true_length).abs(),
            length.est_error
        );
    }

    // Integrals can also produce vectors; on a closed surface the normals
    // integrate to exactly zero by the divergence theorem.
    let torus = catalog_entry("torus")?.chart()?;
    let normals = surface_integral(&torus, &QuadratureSpec::default(), |f| Ok(f.n))?;
    println!(
        "\nintegral of N over the closed torus: ({:+.2e}, {:+.2e}, {:+.2e})",
        normals.value.x, normals.value.y, normals.value.z
    );
    Ok(())
}
