//! Command-line front end: surface resolution (catalog names or JSON
//! definition files), field and scalar resolution, identity dispatch, and
//! report rendering in text, JSON, or CSV.
//!
//! The binary `verify` is a thin wrapper over [`cli_main`]; everything here
//! is also callable as a library, which is how the integration tests drive
//! it. Exit codes: `0` when every check passes (hypothesis-violated records
//! do not count as failures), `1` when some identity fails, `2` for usage,
//! schema, or computation errors.

use crate::catalog::{catalog_entry, preset_field, preset_scalar, CatalogEntry};
use crate::fields::{
    AmbientField, IndexOptions, ScalarField, SingularitySpec, SurfaceVectorField, TangentField,
};
use crate::geometry::{Chart, ChartOptions, Domain};
use crate::identities::{
    check_curvature_identity, check_divergence_identity, check_gauss_bonnet, check_gb_integrand,
    check_hessian_identities, check_index_identity, check_liouville, check_minkowski,
    check_moment_identities, check_poincare_hopf, check_stokes_scalar, check_stokes_vector,
    check_unit_tangent_identity, IdentityReport, Value, IDENTITY_IDS,
};
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result};
use clap::{Parser, ValueEnum};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Number of seeded samples the `gb-integrand` check draws in a CLI run.
const GB_INTEGRAND_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Everything a run needs, independent of argument parsing.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Catalog surface name or path to a JSON definition file.
    pub surface: String,
    /// Vector fields: preset names, inline `"fx,fy,fz"`, or JSON file
    /// paths. Empty means the definition's fields, or `e3`.
    pub fields: Vec<String>,
    /// Scalar fields: preset names, inline expressions, or file paths.
    /// Empty means the definition's scalars, or `x1x2` and `x3sq`.
    pub scalars: Vec<String>,
    /// Identity ids to run, in any order; empty or `all` means every id.
    pub identities: Vec<String>,
    /// Surface panels per direction (both u and v).
    pub panels: Option<usize>,
    pub nodes: Option<usize>,
    pub boundary_panels: Option<usize>,
    /// Relative tolerance override applied to every check.
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
    /// Seed for the sampled pointwise checks.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            surface: String::new(),
            fields: Vec::new(),
            scalars: Vec::new(),
            identities: Vec::new(),
            panels: None,
            nodes: None,
            boundary_panels: None,
            tolerance: None,
            format: OutputFormat::Text,
            seed: 0,
        }
    }
}

/// One line of a report, in the exact shape serialized to JSON and CSV.
/// `lhs`, `rhs`, and the numeric fields are absent (`null`) for
/// hypothesis-violated records, which carry their explanation in `detail`.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub identity: String,
    pub inputs: String,
    pub lhs: Option<serde_json::Value>,
    pub rhs: Option<serde_json::Value>,
    pub residual: Option<f64>,
    pub est_error: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
    pub status: String,
    pub detail: String,
}

fn value_to_json(value: &Value) -> serde_json::Value {
    let number = |x: f64| {
        serde_json::Number::from_f64(x)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|| serde_json::Value::String(format!("{x}")))
    };
    match value {
        Value::Scalar(s) => number(*s),
        Value::Vector(v) => serde_json::Value::Array(vec![number(v.x), number(v.y), number(v.z)]),
    }
}

impl Record {
    fn from_report(report: &IdentityReport) -> Record {
        Record {
            identity: report.identity.to_string(),
            inputs: report.inputs.clone(),
            lhs: Some(value_to_json(&report.lhs)),
            rhs: Some(value_to_json(&report.rhs)),
            residual: Some(report.residual),
            est_error: Some(report.est_error),
            tolerance: Some(report.tolerance),
            pass: Some(report.pass),
            status: if report.pass { "pass" } else { "fail" }.to_string(),
            detail: String::new(),
        }
    }

    fn hypothesis_violated(identity: &str, inputs: &str, detail: &str) -> Record {
        Record {
            identity: identity.to_string(),
            inputs: inputs.to_string(),
            lhs: None,
            rhs: None,
            residual: None,
            est_error: None,
            tolerance: None,
            pass: None,
            status: "hypothesis-violated".to_string(),
            detail: detail.to_string(),
        }
    }
}

/// Result of a run: the rendered report plus the structured records.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub surface: String,
    pub records: Vec<Record>,
    pub output: String,
}

impl RunOutcome {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == "fail").count()
    }

    pub fn hypothesis_violations(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == "hypothesis-violated")
            .count()
    }

    /// `0` when nothing failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures() > 0 {
            1
        } else {
            0
        }
    }

    /// One-line human summary, intended for stderr.
    pub fn summary(&self) -> String {
        let passed = self
            .records
            .iter()
            .filter(|r| r.status == "pass")
            .count();
        let mut line = format!(
            "{}: {} checks: {} passed, {} failed, {} hypothesis-violated",
            self.surface,
            self.records.len(),
            passed,
            self.failures(),
            self.hypothesis_violations(),
        );
        let failing: Vec<&str> = self
            .records
            .iter()
            .filter(|r| r.status == "fail")
            .map(|r| r.identity.as_str())
            .collect();
        if !failing.is_empty() {
            line.push_str(&format!("; failing: {}", failing.join(", ")));
        }
        line
    }
}

// ---------------------------------------------------------------------------
// Surface definition files
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefinitionFile {
    surface: SurfaceDef,
    #[serde(default)]
    fields: Vec<FieldDef>,
    #[serde(default)]
    scalars: Vec<String>,
    #[serde(default)]
    unit_tangent_field: Option<FieldDef>,
    #[serde(default)]
    liouville_direction: Option<[f64; 3]>,
    #[serde(default)]
    singularities: Vec<SingularityDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceDef {
    x: String,
    y: String,
    z: String,
    domain: DomainDef,
    #[serde(default)]
    periodic_u: bool,
    #[serde(default)]
    periodic_v: bool,
    #[serde(default)]
    euler_characteristic: Option<i32>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum DomainDef {
    /// `{"type": "rectangle", "u": [u0, u1], "v": [v0, v1]}`
    Rectangle { u: [f64; 2], v: [f64; 2] },
    /// `{"type": "disk", "center": [cu, cv], "radius": r}` (center optional)
    Disk {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FieldDef {
    Preset { name: String },
    Components { components: [String; 3] },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SingularityDef {
    u: f64,
    v: f64,
    #[serde(default)]
    index: Option<i32>,
}

/// A surface ready to be checked: the chart plus the per-surface defaults
/// the runner consults (tangent field for the unit-tangent check, direction
/// for the rotation-rate check, zeros of the rotation field).
#[derive(Debug, Clone)]
pub struct SurfaceSetup {
    pub name: String,
    pub chart: Chart,
    /// Ambient field whose projection is nonvanishing on this surface,
    /// if one is known.
    pub unit_tangent: Option<AmbientField>,
    pub liouville_direction: Vector3<f64>,
    pub rotation_singularities: Vec<SingularitySpec>,
    /// Fields and scalars the surface brings along (definition files only);
    /// command-line `--field`/`--scalar` flags take precedence.
    pub default_fields: Vec<AmbientField>,
    pub default_scalars: Vec<ScalarField>,
}

fn definition_error(path: &Path, detail: impl std::fmt::Display) -> Error {
    Error::Definition {
        path: path.display().to_string(),
        detail: detail.to_string(),
    }
}

fn field_from_def(path: &Path, def: &FieldDef) -> Result<AmbientField> {
    match def {
        FieldDef::Preset { name } => {
            preset_field(name).map_err(|e| definition_error(path, e))
        }
        FieldDef::Components { components } => {
            AmbientField::parse([components[0].as_str(), &components[1], &components[2]])
                .map_err(|e| definition_error(path, e))
        }
    }
}

/// Loads a surface (and its optional companions) from a JSON definition
/// file. All schema and expression problems are reported as definition
/// errors naming the file.
pub fn load_definition(path: &Path) -> Result<SurfaceSetup> {
    let text = std::fs::read_to_string(path).map_err(|e| definition_error(path, e))?;
    let def: DefinitionFile =
        serde_json::from_str(&text).map_err(|e| definition_error(path, e))?;

    let domain = match def.surface.domain {
        DomainDef::Rectangle { u, v } => Domain::rectangle((u[0], u[1]), (v[0], v[1])),
        DomainDef::Disk { center, radius } => Domain::disk((center[0], center[1]), radius),
    };
    let chart = Chart::parse(
        [&def.surface.x as &str, &def.surface.y, &def.surface.z],
        domain,
        ChartOptions {
            periodic_u: def.surface.periodic_u,
            periodic_v: def.surface.periodic_v,
            euler_characteristic: def.surface.euler_characteristic,
            ..ChartOptions::default()
        },
    )
    .map_err(|e| definition_error(path, e))?;

    let unit_tangent = def
        .unit_tangent_field
        .as_ref()
        .map(|f| field_from_def(path, f))
        .transpose()?;
    let liouville_direction = match def.liouville_direction {
        Some(c) => {
            let v = Vector3::new(c[0], c[1], c[2]);
            if v.norm() == 0.0 {
                return Err(definition_error(path, "liouville_direction must be nonzero"));
            }
            v
        }
        None => Vector3::x(),
    };
    let default_fields = def
        .fields
        .iter()
        .map(|f| field_from_def(path, f))
        .collect::<Result<Vec<_>>>()?;
    let default_scalars = def
        .scalars
        .iter()
        .map(|s| ScalarField::parse(s).map_err(|e| definition_error(path, e)))
        .collect::<Result<Vec<_>>>()?;

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "definition".to_string());
    Ok(SurfaceSetup {
        name,
        chart,
        unit_tangent,
        liouville_direction,
        rotation_singularities: def
            .singularities
            .iter()
            .map(|s| SingularitySpec {
                uv: (s.u, s.v),
                declared: s.index,
            })
            .collect(),
        default_fields,
        default_scalars,
    })
}

fn setup_from_catalog(entry: &CatalogEntry) -> Result<SurfaceSetup> {
    let unit_tangent = entry
        .unit_tangent_preset
        .map(preset_field)
        .transpose()?;
    Ok(SurfaceSetup {
        name: entry.name.to_string(),
        chart: entry.chart()?,
        unit_tangent,
        liouville_direction: Vector3::x(),
        rotation_singularities: entry.rotation_singularities.clone(),
        default_fields: Vec::new(),
        default_scalars: Vec::new(),
    })
}

/// Resolves `--surface`: a catalog name, or a path to a definition file.
pub fn resolve_surface(surface: &str) -> Result<SurfaceSetup> {
    match catalog_entry(surface) {
        Ok(entry) => setup_from_catalog(&entry),
        Err(unknown) => {
            let path = Path::new(surface);
            if path.exists() {
                load_definition(path)
            } else {
                Err(unknown)
            }
        }
    }
}

/// Resolves `--field`: preset name, JSON file with three component
/// expressions, or inline `"fx,fy,fz"`.
pub fn resolve_field(source: &str) -> Result<AmbientField> {
    if let Ok(field) = preset_field(source) {
        return Ok(field);
    }
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| definition_error(path, e))?;
        let components: [String; 3] =
            serde_json::from_str(&text).map_err(|e| definition_error(path, e))?;
        return AmbientField::parse([components[0].as_str(), &components[1], &components[2]])
            .map_err(|e| definition_error(path, e));
    }
    if source.contains(',') {
        let parts: Vec<&str> = source.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidField {
                detail: format!(
                    "inline field must have exactly 3 comma-separated components, got {}",
                    parts.len()
                ),
            });
        }
        return AmbientField::parse([parts[0], parts[1], parts[2]]);
    }
    Err(Error::UnknownName {
        kind: "field",
        name: source.to_string(),
        hint: "; use a preset name (e1, e2, e3, x, e3xX, radial, conj-square), \
               an inline \"fx,fy,fz\", or a JSON file path"
            .to_string(),
    })
}

/// Resolves `--scalar`: preset name, file containing one expression, or an
/// inline expression in `(x, y, z)`.
pub fn resolve_scalar(source: &str) -> Result<ScalarField> {
    if let Ok(scalar) = preset_scalar(source) {
        return Ok(scalar);
    }
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| definition_error(path, e))?;
        return ScalarField::parse(text.trim()).map_err(|e| definition_error(path, e));
    }
    ScalarField::parse(source)
}

fn requested_ids(identities: &[String]) -> Result<Vec<&'static str>> {
    if identities.is_empty() || identities.iter().any(|i| i == "all") {
        return Ok(IDENTITY_IDS.to_vec());
    }
    for requested in identities {
        if !IDENTITY_IDS.contains(&requested.as_str()) {
            return Err(Error::UnknownName {
                kind: "identity",
                name: requested.clone(),
                hint: format!("; known ids: all, {}", IDENTITY_IDS.join(", ")),
            });
        }
    }
    // Canonical execution order regardless of flag order, without
    // duplicates.
    Ok(IDENTITY_IDS
        .iter()
        .copied()
        .filter(|id| identities.iter().any(|r| r == id))
        .collect())
}

fn quadrature_from_config(config: &RunConfig) -> Result<QuadratureSpec> {
    let mut spec = QuadratureSpec::default();
    if let Some(panels) = config.panels {
        spec.panels_u = panels;
        spec.panels_v = panels;
    }
    if let Some(nodes) = config.nodes {
        spec.nodes_per_panel = nodes;
    }
    if let Some(boundary) = config.boundary_panels {
        spec.boundary_panels = boundary;
    }
    spec.validate()?;
    Ok(spec)
}

/// Appends checker results to the record list, converting hypothesis
/// violations into their dedicated record status. Other errors abort the
/// run.
fn push_result(
    records: &mut Vec<Record>,
    inputs: &str,
    result: Result<Vec<IdentityReport>>,
) -> Result<()> {
    match result {
        Ok(reports) => records.extend(reports.iter().map(Record::from_report)),
        Err(Error::HypothesisViolated { identity, detail }) => {
            records.push(Record::hypothesis_violated(&identity, inputs, &detail));
        }
        Err(other) => return Err(other),
    }
    Ok(())
}

/// Runs the configured checks and renders the report. Deterministic: the
/// same configuration produces byte-identical output.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let setup = resolve_surface(&config.surface)?;
    let spec = quadrature_from_config(config)?;
    let tol = config.tolerance;
    let ids = requested_ids(&config.identities)?;

    let fields: Vec<AmbientField> = if !config.fields.is_empty() {
        config
            .fields
            .iter()
            .map(|s| resolve_field(s))
            .collect::<Result<_>>()?
    } else if !setup.default_fields.is_empty() {
        setup.default_fields.clone()
    } else {
        vec![preset_field("e3")?]
    };
    let scalars: Vec<ScalarField> = if !config.scalars.is_empty() {
        config
            .scalars
            .iter()
            .map(|s| resolve_scalar(s))
            .collect::<Result<_>>()?
    } else if !setup.default_scalars.is_empty() {
        setup.default_scalars.clone()
    } else {
        vec![preset_scalar("x1x2")?, preset_scalar("x3sq")?]
    };

    let chart = &setup.chart;
    let rotation = TangentField::new(preset_field("e3xX")?);
    let index_options = IndexOptions::default();

    // Group results computed once and sliced by id.
    let mut moments: Option<Vec<IdentityReport>> = None;
    let mut minkowski: Option<Vec<IdentityReport>> = None;
    let mut hessians: Option<Vec<Vec<IdentityReport>>> = None;

    let mut records = Vec::new();
    for id in ids {
        match id {
            "stokes-scalar" => {
                let f = &scalars[0];
                let g = if scalars.len() > 1 { &scalars[1] } else { &scalars[0] };
                let report = check_stokes_scalar(chart, f, g, &spec, tol)?;
                records.push(Record::from_report(&report));
            }
            "stokes-vector" => {
                for field in &fields {
                    let report = check_stokes_vector(
                        chart,
                        &SurfaceVectorField::Ambient(field.clone()),
                        &SurfaceVectorField::Normal,
                        &spec,
                        tol,
                    )?;
                    records.push(Record::from_report(&report));
                }
            }
            "eq3" => {
                for field in &fields {
                    let report = check_divergence_identity(chart, field, &spec, tol)?;
                    records.push(Record::from_report(&report));
                }
            }
            "eq4" => {
                for field in &fields {
                    let report = check_curvature_identity(chart, field, &spec, tol)?;
                    records.push(Record::from_report(&report));
                }
            }
            "moment1" | "moment2" | "moment3" | "moment4" => {
                if moments.is_none() {
                    moments = Some(check_moment_identities(chart, &spec, tol)?);
                }
                let group = moments.as_ref().expect("just computed");
                let report = group
                    .iter()
                    .find(|r| r.identity == id)
                    .expect("moment ids cover the group");
                records.push(Record::from_report(report));
            }
            "minkowski1" | "minkowski2" => {
                if minkowski.is_none() {
                    minkowski = Some(check_minkowski(chart, &spec, tol)?);
                }
                let group = minkowski.as_ref().expect("just computed");
                let report = group
                    .iter()
                    .find(|r| r.identity == id)
                    .expect("minkowski ids cover the group");
                records.push(Record::from_report(report));
            }
            "liouville" => {
                let c = setup.liouville_direction;
                let inputs = format!("C = ({}, {}, {})", c.x, c.y, c.z);
                push_result(
                    &mut records,
                    &inputs,
                    check_liouville(chart, &c, &spec, tol).map(|r| vec![r]),
                )?;
            }
            "gauss-bonnet" => {
                let inputs = format!("χ = {}", chart.euler_characteristic());
                push_result(
                    &mut records,
                    &inputs,
                    check_gauss_bonnet(chart, &spec, tol).map(|r| vec![r]),
                )?;
            }
            "gb-integrand" => {
                let inputs = format!(
                    "{GB_INTEGRAND_SAMPLES} random (point, direction) samples, seed {}",
                    config.seed
                );
                push_result(
                    &mut records,
                    &inputs,
                    check_gb_integrand(chart, &spec, config.seed, GB_INTEGRAND_SAMPLES, tol)
                        .map(|r| vec![r]),
                )?;
            }
            "unit-tangent" => match &setup.unit_tangent {
                Some(ambient) => {
                    let field = TangentField::new(ambient.clone());
                    let inputs = format!("V = {}", field.describe());
                    push_result(
                        &mut records,
                        &inputs,
                        check_unit_tangent_identity(chart, &field, &spec, tol).map(|r| vec![r]),
                    )?;
                }
                None => {
                    records.push(Record::hypothesis_violated(
                        "unit-tangent",
                        "no tangent field",
                        "no nonvanishing tangent field is available for this surface \
                         (none exists on a sphere); supply `unit_tangent_field` in a \
                         definition file",
                    ));
                }
            },
            "index" => {
                let inputs = format!("V = {}", rotation.describe());
                push_result(
                    &mut records,
                    &inputs,
                    check_index_identity(
                        chart,
                        &rotation,
                        &setup.rotation_singularities,
                        &spec,
                        &index_options,
                        tol,
                    )
                    .map(|r| vec![r]),
                )?;
            }
            "poincare-hopf" => {
                let inputs = format!(
                    "χ = {}, V = {}",
                    chart.euler_characteristic(),
                    rotation.describe()
                );
                push_result(
                    &mut records,
                    &inputs,
                    check_poincare_hopf(
                        chart,
                        &rotation,
                        &setup.rotation_singularities,
                        &spec,
                        &index_options,
                        tol,
                    )
                    .map(|r| vec![r]),
                )?;
            }
            "hessian1" | "hessian2" => {
                if hessians.is_none() {
                    hessians = Some(
                        scalars
                            .iter()
                            .map(|f| check_hessian_identities(chart, f, &spec, tol))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                for pair in hessians.as_ref().expect("just computed") {
                    let report = pair
                        .iter()
                        .find(|r| r.identity == id)
                        .expect("hessian ids cover the pair");
                    records.push(Record::from_report(report));
                }
            }
            other => unreachable!("unhandled identity id {other}"),
        }
    }

    let output = render(&setup.name, &spec, &records, config.format)?;
    Ok(RunOutcome {
        surface: setup.name,
        records,
        output,
    })
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render_json_value(value: &Option<serde_json::Value>) -> String {
    match value {
        None => "-".to_string(),
        Some(serde_json::Value::Array(items)) => {
            let parts: Vec<String> = items.iter().map(render_json_scalar).collect();
            format!("({})", parts.join(", "))
        }
        Some(other) => render_json_scalar(other),
    }
}

fn render_json_scalar(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Number(n) => {
            format!("{:.12e}", n.as_f64().unwrap_or(f64::NAN))
        }
        other => other.to_string(),
    }
}

fn render(
    surface: &str,
    spec: &QuadratureSpec,
    records: &[Record],
    format: OutputFormat,
) -> Result<String> {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "surface {surface}: {}x{} panels, {} nodes per panel, {} boundary panels\n",
                spec.panels_u, spec.panels_v, spec.nodes_per_panel, spec.boundary_panels
            );
            for r in records {
                match r.status.as_str() {
                    "hypothesis-violated" => out.push_str(&format!(
                        "{:<14} {:<20} {}\n",
                        r.identity, r.status, r.detail
                    )),
                    _ => out.push_str(&format!(
                        "{:<14} {:<20} lhs={} rhs={} residual={:.3e} est={:.3e} tol={:.1e}  [{}]\n",
                        r.identity,
                        r.status,
                        render_json_value(&r.lhs),
                        render_json_value(&r.rhs),
                        r.residual.unwrap_or(f64::NAN),
                        r.est_error.unwrap_or(f64::NAN),
                        r.tolerance.unwrap_or(f64::NAN),
                        r.inputs,
                    )),
                }
            }
            Ok(out)
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct JsonReport<'a> {
                surface: &'a str,
                records: &'a [Record],
            }
            let mut text = serde_json::to_string_pretty(&JsonReport { surface, records })?;
            text.push('\n');
            Ok(text)
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record([
                    "identity",
                    "inputs",
                    "lhs",
                    "rhs",
                    "residual",
                    "est_error",
                    "tolerance",
                    "pass",
                    "status",
                    "detail",
                ])
                .map_err(csv_error)?;
            let opt_num = |x: &Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
            for r in records {
                let value_cell = |v: &Option<serde_json::Value>| match v {
                    None => String::new(),
                    Some(_) => render_json_value(v),
                };
                writer
                    .write_record([
                        r.identity.clone(),
                        r.inputs.clone(),
                        value_cell(&r.lhs),
                        value_cell(&r.rhs),
                        opt_num(&r.residual),
                        opt_num(&r.est_error),
                        opt_num(&r.tolerance),
                        r.pass.map(|p| p.to_string()).unwrap_or_default(),
                        r.status.clone(),
                        r.detail.clone(),
                    ])
                    .map_err(csv_error)?;
            }
            let bytes = writer.into_inner().map_err(|e| Error::InvalidField {
                detail: format!("csv buffering failed: {e}"),
            })?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidField {
                detail: format!("csv output was not UTF-8: {e}"),
            })
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidField {
        detail: format!("csv rendering failed: {e}"),
    }
}

// ---------------------------------------------------------------------------
// Argument parsing and the binary entry point
// ---------------------------------------------------------------------------

/// Check curvature integral identities on parametric surface patches.
#[derive(Debug, Parser)]
#[command(name = "verify", version, about)]
pub struct Cli {
    /// Catalog surface name or path to a JSON surface definition file
    #[arg(long)]
    pub surface: String,
    /// Vector field: preset name, inline "fx,fy,fz", or JSON file path
    /// (repeatable)
    #[arg(long = "field")]
    pub fields: Vec<String>,
    /// Scalar field: preset name, inline expression, or file path
    /// (repeatable)
    #[arg(long = "scalar")]
    pub scalars: Vec<String>,
    /// Identity id to check (repeatable; default: all)
    #[arg(long = "identity")]
    pub identities: Vec<String>,
    /// Surface quadrature panels per direction
    #[arg(long)]
    pub panels: Option<usize>,
    /// Gauss-Legendre nodes per panel
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Boundary quadrature panels per segment
    #[arg(long = "boundary-panels")]
    pub boundary_panels: Option<usize>,
    /// Relative tolerance override for every check
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the sampled pointwise checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Cli {
    pub fn into_config(self) -> (RunConfig, Option<PathBuf>) {
        (
            RunConfig {
                surface: self.surface,
                fields: self.fields,
                scalars: self.scalars,
                identities: self.identities,
                panels: self.panels,
                nodes: self.nodes,
                boundary_panels: self.boundary_panels,
                tolerance: self.tol,
                format: self.format,
                seed: self.seed,
            },
            self.out,
        )
    }
}

/// Entry point used by the `verify` binary. Returns the process exit code.
pub fn cli_main() -> i32 {
    let (config, out) = Cli::parse().into_config();
    match run(&config) {
        Ok(outcome) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &outcome.output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", outcome.output);
            }
            eprintln!("{}", outcome.summary());
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
