//! Build a parametric surface chart and inspect its geometry: position,
//! adapted tangent frame, principal curvatures, and derived invariants.
//!
//! ```bash
//! cargo run --example principal_frames
//! ```

use surfint::geometry::{Chart, ChartOptions, Domain};

fn main() -> surfint::Result<()> {
    // A torus of radii 2 and 1, doubly periodic, hence a closed surface.
    let torus = Chart::parse(
        ["(2 + cos(v))*cos(u)", "(2 + cos(v))*sin(u)", "sin(v)"],
        Domain::rectangle((0.0, std::f64::consts::TAU), (0.0, std::f64::consts::TAU)),
        ChartOptions {
            periodic_u: true,
            periodic_v: true,
            euler_characteristic: Some(0),
            ..Default::default()
        },
    )?;
    println!(
        "torus: closed = {}, boundary loops = {}, euler characteristic = {}",
        torus.is_closed(),
        torus.boundary_loop_count(),
        torus.euler_characteristic()
    );

    println!("\n  (u, v)            K          H       kappa_1    kappa_2");
    for (u, v) in [(0.0, 0.0), (1.0, 2.0), (0.5, std::f64::consts::PI)] {
        let f = torus.frame_at(u, v)?;
        println!(
            "  ({u:4.2}, {v:4.2})  {:+9.5}  {:+9.5}  {:+9.5}  {:+9.5}",
            f.gauss, f.mean, f.kappa1, f.kappa2
        );
        // The frame (P, Q, N) is orthonormal and right-handed; P and Q are
        // principal directions with kappa_1 <= kappa_2.
        assert!((f.p.cross(&f.q) - f.n).norm() < 1e-12);
    }

    // A sphere is umbilic everywhere: both principal curvatures agree and
    // every tangent direction is principal; the frame is then an arbitrary
    // but deterministic choice.
    let sphere = Chart::parse(
        ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
        Domain::rectangle((0.0, std::f64::consts::PI), (0.0, std::f64::consts::TAU)),
        ChartOptions {
            periodic_v: true,
            ..Default::default()
        },
    )?;
    let f = sphere.frame_at(1.0, 1.0)?;
    println!(
        "\nunit sphere at (1, 1): kappa_1 = {:+.12}, kappa_2 = {:+.12}, umbilic = {}",
        f.kappa1, f.kappa2, f.umbilic
    );
    println!(
        "outward normal convention: N points away from the center, so both \
         principal curvatures are -1"
    );
    Ok(())
}
