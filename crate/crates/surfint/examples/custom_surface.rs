//! Define a surface in a JSON file and run the full check suite on it —
//! the same path the `verify` binary takes with `--surface <file>`.
//!
//! The definition used here is a latitude–longitude spherical cap: its
//! pole edge degenerates to a point and its seam is periodic, so the
//! boundary reduces to the smooth rim. The file also brings its own
//! fields, scalars, a nonvanishing tangent field, a rotation-rate axis,
//! and the rotation field's zero at the pole with a declared index.
//!
//! ```bash
//! cargo run --example custom_surface
//! ```

use std::path::Path;
use surfint::cli::{load_definition, run, OutputFormat, RunConfig};

fn main() -> surfint::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/latlong-cap.json");

    // Load the definition directly to poke at the chart...
    let setup = load_definition(&path)?;
    println!(
        "loaded {}: boundary loops = {}, euler characteristic = {}, closed = {}",
        setup.name,
        setup.chart.boundary_loop_count(),
        setup.chart.euler_characteristic(),
        setup.chart.is_closed()
    );

    // ...then run the whole suite exactly as the CLI would.
    let config = RunConfig {
        surface: path.to_string_lossy().into_owned(),
        format: OutputFormat::Text,
        ..RunConfig::default()
    };
    let outcome = run(&config)?;
    print!("{}", outcome.output);
    println!("{}", outcome.summary());
    std::process::exit(outcome.exit_code());
}
