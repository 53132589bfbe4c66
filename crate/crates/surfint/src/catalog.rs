//! A built-in collection of surface patches with known closed-form
//! invariants, plus named preset vector and scalar fields.
//!
//! The catalog serves two purposes: it gives the command-line tool a set of
//! surfaces addressable by name, and it gives the test suite geometry whose
//! area, total Gauss curvature, and total geodesic curvature are known
//! exactly, so the checkers can be validated against independent values.

use crate::fields::{AmbientField, ScalarField, SingularitySpec};
use crate::geometry::{Chart, ChartOptions, Domain};
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Closed-form invariants of a catalog surface, used as test oracles.
/// `None` means the quantity has no tidy closed form (or, for the total
/// geodesic curvature, that the boundary has corners and the smooth
/// formula does not apply).
#[derive(Debug, Clone, Copy)]
pub struct Expectations {
    /// Surface area `∫ dA`.
    pub area: Option<f64>,
    /// Total Gauss curvature `∫ K dA`.
    pub total_gauss_curvature: Option<f64>,
    /// Total geodesic curvature of the boundary `∮ κ_g ds` (zero for
    /// closed surfaces).
    pub total_geodesic_curvature: Option<f64>,
}

/// One named surface in the catalog. The chart itself is built on demand
/// by [`CatalogEntry::chart`]; everything else is plain data.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Stable name accepted by `--surface`.
    pub name: &'static str,
    /// One-line human description.
    pub summary: &'static str,
    components: [&'static str; 3],
    domain: Domain,
    periodic_u: bool,
    periodic_v: bool,
    euler_characteristic: Option<i32>,
    pub expectations: Expectations,
    /// Preset field name whose tangential projection is nonvanishing on
    /// this surface, suitable for the unit-tangent check. `None` when no
    /// preset qualifies (a sphere admits no nonvanishing tangent field).
    pub unit_tangent_preset: Option<&'static str>,
    /// Zeros of the rotation field `(−y, x, 0)` on this surface, with
    /// declared indices where the winding cannot be computed (chart-edge
    /// points of closed charts).
    pub rotation_singularities: Vec<SingularitySpec>,
}

impl CatalogEntry {
    /// Builds the chart for this entry.
    pub fn chart(&self) -> Result<Chart> {
        Chart::parse(
            self.components,
            self.domain,
            ChartOptions {
                periodic_u: self.periodic_u,
                periodic_v: self.periodic_v,
                euler_characteristic: self.euler_characteristic,
                ..ChartOptions::default()
            },
        )
    }
}

const STEREOGRAPHIC_NORTH: [&str; 3] = [
    "2*u/(1 + u^2 + v^2)",
    "2*v/(1 + u^2 + v^2)",
    "(1 - u^2 - v^2)/(1 + u^2 + v^2)",
];

// The south cap swaps the roles of u and v so that X_u × X_v still points
// out of the sphere.
const STEREOGRAPHIC_SOUTH: [&str; 3] = [
    "2*v/(1 + u^2 + v^2)",
    "2*u/(1 + u^2 + v^2)",
    "(u^2 + v^2 - 1)/(1 + u^2 + v^2)",
];

/// A spherical cap of opening angle `theta0` about the north pole,
/// parametrized stereographically from the disk of radius `tan(theta0/2)`
/// so the pole is an interior point of the domain.
fn cap_entry(name: &'static str, summary: &'static str, theta0: f64) -> CatalogEntry {
    CatalogEntry {
        name,
        summary,
        components: STEREOGRAPHIC_NORTH,
        domain: Domain::disk((0.0, 0.0), (theta0 / 2.0).tan()),
        periodic_u: false,
        periodic_v: false,
        euler_characteristic: None,
        expectations: Expectations {
            area: Some(TAU * (1.0 - theta0.cos())),
            total_gauss_curvature: Some(TAU * (1.0 - theta0.cos())),
            total_geodesic_curvature: Some(TAU * theta0.cos()),
        },
        unit_tangent_preset: Some("e1"),
        rotation_singularities: vec![SingularitySpec {
            uv: (0.0, 0.0),
            declared: None,
        }],
    }
}

/// The full list of built-in surfaces, in presentation order.
pub fn catalog_list() -> Vec<CatalogEntry> {
    let sphere_singularities = vec![
        SingularitySpec {
            uv: (0.0, 0.0),
            declared: Some(1),
        },
        SingularitySpec {
            uv: (PI, 0.0),
            declared: Some(1),
        },
    ];
    let monkey_total_k = -2.0 * TAU * (1.0 - 10.0_f64.powf(-0.5));
    vec![
        CatalogEntry {
            name: "unit-sphere",
            summary: "unit sphere in latitude-longitude coordinates (closed)",
            components: ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            domain: Domain::rectangle((0.0, PI), (0.0, TAU)),
            periodic_u: false,
            periodic_v: true,
            euler_characteristic: None,
            expectations: Expectations {
                area: Some(2.0 * TAU),
                total_gauss_curvature: Some(2.0 * TAU),
                total_geodesic_curvature: Some(0.0),
            },
            unit_tangent_preset: None,
            rotation_singularities: sphere_singularities.clone(),
        },
        CatalogEntry {
            name: "sphere-r2",
            summary: "sphere of radius 2 (closed); K = 1/4, total curvature still 4π",
            components: ["2*sin(u)*cos(v)", "2*sin(u)*sin(v)", "2*cos(u)"],
            domain: Domain::rectangle((0.0, PI), (0.0, TAU)),
            periodic_u: false,
            periodic_v: true,
            euler_characteristic: None,
            expectations: Expectations {
                area: Some(8.0 * TAU),
                total_gauss_curvature: Some(2.0 * TAU),
                total_geodesic_curvature: Some(0.0),
            },
            unit_tangent_preset: None,
            rotation_singularities: sphere_singularities,
        },
        CatalogEntry {
            name: "torus",
            summary: "torus of revolution, radii 2 and 1 (closed, χ = 0)",
            components: ["(2 + cos(u))*cos(v)", "(2 + cos(u))*sin(v)", "sin(u)"],
            domain: Domain::rectangle((0.0, TAU), (0.0, TAU)),
            periodic_u: true,
            periodic_v: true,
            euler_characteristic: Some(0),
            expectations: Expectations {
                area: Some(2.0 * TAU * TAU),
                total_gauss_curvature: Some(0.0),
                total_geodesic_curvature: Some(0.0),
            },
            unit_tangent_preset: Some("e3xX"),
            rotation_singularities: Vec::new(),
        },
        cap_entry(
            "cap-pi6",
            "spherical cap of opening angle π/6 (stereographic chart)",
            PI / 6.0,
        ),
        cap_entry(
            "cap-pi3",
            "spherical cap of opening angle π/3 (stereographic chart)",
            PI / 3.0,
        ),
        cap_entry(
            "cap-2pi5",
            "spherical cap of opening angle 2π/5 (stereographic chart)",
            2.0 * PI / 5.0,
        ),
        CatalogEntry {
            components: STEREOGRAPHIC_SOUTH,
            ..cap_entry(
                "cap-south-2pi5",
                "spherical cap of opening angle 2π/5 about the south pole",
                2.0 * PI / 5.0,
            )
        },
        CatalogEntry {
            name: "disk",
            summary: "flat unit disk in the plane z = 0",
            components: ["u", "v", "0"],
            domain: Domain::disk((0.0, 0.0), 1.0),
            periodic_u: false,
            periodic_v: false,
            euler_characteristic: None,
            expectations: Expectations {
                area: Some(PI),
                total_gauss_curvature: Some(0.0),
                total_geodesic_curvature: Some(TAU),
            },
            unit_tangent_preset: Some("e1"),
            rotation_singularities: vec![SingularitySpec {
                uv: (0.0, 0.0),
                declared: None,
            }],
        },
        CatalogEntry {
            name: "band-pi4",
            summary: "spherical band between colatitudes π/4 and π/2 (two boundary circles)",
            components: ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            domain: Domain::rectangle((PI / 4.0, FRAC_PI_2), (0.0, TAU)),
            periodic_u: false,
            periodic_v: true,
            euler_characteristic: None,
            expectations: Expectations {
                area: Some(PI * 2.0_f64.sqrt()),
                total_gauss_curvature: Some(PI * 2.0_f64.sqrt()),
                total_geodesic_curvature: Some(-PI * 2.0_f64.sqrt()),
            },
            unit_tangent_preset: Some("e3xX"),
            rotation_singularities: Vec::new(),
        },
        CatalogEntry {
            name: "monkey-saddle",
            summary: "monkey saddle z = x³ − 3xy² over the unit disk",
            components: ["u", "v", "u^3 - 3*u*v^2"],
            domain: Domain::disk((0.0, 0.0), 1.0),
            periodic_u: false,
            periodic_v: false,
            euler_characteristic: None,
            expectations: Expectations {
                area: Some(PI * (10.0_f64.sqrt() / 2.0 + (3.0 + 10.0_f64.sqrt()).ln() / 6.0)),
                total_gauss_curvature: Some(monkey_total_k),
                total_geodesic_curvature: Some(TAU - monkey_total_k),
            },
            unit_tangent_preset: Some("e1"),
            rotation_singularities: vec![SingularitySpec {
                uv: (0.0, 0.0),
                declared: None,
            }],
        },
        CatalogEntry {
            name: "torus-quarter",
            summary: "quarter patch of the torus (cornered boundary, χ = 1)",
            components: ["(2 + cos(u))*cos(v)", "(2 + cos(u))*sin(v)", "sin(u)"],
            domain: Domain::rectangle((0.0, FRAC_PI_2), (0.0, FRAC_PI_2)),
            periodic_u: false,
            periodic_v: false,
            euler_characteristic: Some(1),
            expectations: Expectations {
                area: Some(FRAC_PI_2 * (PI + 1.0)),
                total_gauss_curvature: Some(FRAC_PI_2),
                // The boundary has corners, so the smooth total geodesic
                // curvature is not the GB complement; no closed form kept.
                total_geodesic_curvature: None,
            },
            unit_tangent_preset: Some("e3xX"),
            rotation_singularities: Vec::new(),
        },
    ]
}

fn known_names<T>(items: &[(&'static str, T)]) -> String {
    let names: Vec<&str> = items.iter().map(|(n, _)| *n).collect();
    format!("; known names: {}", names.join(", "))
}

/// Looks up a catalog surface by name.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    let list = catalog_list();
    list.iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownName {
            kind: "surface",
            name: name.to_string(),
            hint: format!(
                "; known names: {}",
                list.iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
            ),
        })
}

const PRESET_FIELDS: [(&str, [&str; 3]); 7] = [
    ("e1", ["1", "0", "0"]),
    ("e2", ["0", "1", "0"]),
    ("e3", ["0", "0", "1"]),
    ("x", ["x", "y", "z"]),
    ("e3xX", ["-y", "x", "0"]),
    ("radial", ["x", "y", "0"]),
    ("conj-square", ["x^2 - y^2", "-2*x*y", "0"]),
];

/// Looks up a preset ambient vector field by name (`e1`, `e2`, `e3`, `x`,
/// `e3xX`, `radial`, `conj-square`).
pub fn preset_field(name: &str) -> Result<AmbientField> {
    PRESET_FIELDS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, components)| AmbientField::parse(*components))
        .transpose()?
        .ok_or_else(|| Error::UnknownName {
            kind: "preset field",
            name: name.to_string(),
            hint: known_names(&PRESET_FIELDS),
        })
}

const PRESET_SCALARS: [(&str, &str); 4] = [
    ("half-normsq", "(x^2 + y^2 + z^2)/2"),
    ("x1x2", "x*y"),
    ("x3sq", "z^2"),
    ("expx1", "exp(x)"),
];

/// Looks up a preset scalar field by name (`half-normsq`, `x1x2`, `x3sq`,
/// `expx1`).
pub fn preset_scalar(name: &str) -> Result<ScalarField> {
    PRESET_SCALARS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, source)| ScalarField::parse(source))
        .transpose()?
        .ok_or_else(|| Error::UnknownName {
            kind: "preset scalar",
            name: name.to_string(),
            hint: known_names(&PRESET_SCALARS),
        })
}
