//! Parametric surface patches in R³ and their differential geometry.
//!
//! A [`Chart`] is a map `(u, v) ↦ X(u, v)` given by three parsed
//! expressions over a rectangle or disk in the parameter plane. All
//! derivatives through second order come from automatic differentiation of
//! the expressions, so normals, curvatures, and principal frames carry no
//! finite-difference error.
//!
//! Orientation conventions, used consistently everywhere:
//!
//! * the unit normal is `N = X_u × X_v / |X_u × X_v|`;
//! * the boundary is traversed counterclockwise in the parameter plane,
//!   which keeps the surface on the left when viewed from the side `N`
//!   points to;
//! * principal directions `(P, Q)` are orthonormal tangent vectors with
//!   `P × Q = N`, and the principal curvatures satisfy `κ₁ ≤ κ₂` with
//!   `dN(P) = -κ₁ P`, `dN(Q) = -κ₂ Q`. Under this sign convention the unit
//!   sphere with outward normal has `κ₁ = κ₂ = -1`, mean curvature
//!   `H = -1`, and Gauss curvature `K = 1`.

mod boundary;
mod frame;

pub use boundary::{BoundaryPoint, BoundarySegment, SegmentPath};
pub use frame::FramedPoint;

use crate::expr::Expression;
use crate::{Error, Result};
use nalgebra::Vector3;

/// Parameter-plane region a chart is defined on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `[u0, u1] × [v0, v1]`.
    Rectangle { u0: f64, u1: f64, v0: f64, v1: f64 },
    /// Closed disk of the given radius about `(center_u, center_v)`.
    Disk {
        center_u: f64,
        center_v: f64,
        radius: f64,
    },
}

impl Domain {
    pub fn rectangle(u: (f64, f64), v: (f64, f64)) -> Domain {
        Domain::Rectangle {
            u0: u.0,
            u1: u.1,
            v0: v.0,
            v1: v.1,
        }
    }

    pub fn disk(center: (f64, f64), radius: f64) -> Domain {
        Domain::Disk {
            center_u: center.0,
            center_v: center.1,
            radius,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Domain::Rectangle { u0, u1, v0, v1 } => {
                u0.is_finite() && u1.is_finite() && v0.is_finite() && v1.is_finite() && u0 < u1 && v0 < v1
            }
            Domain::Disk {
                center_u,
                center_v,
                radius,
            } => center_u.is_finite() && center_v.is_finite() && *radius > 0.0 && radius.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidChart {
                detail: format!("empty or non-finite domain {self:?}"),
            })
        }
    }

    /// Distance from `(u, v)` to the domain's parameter-plane boundary;
    /// negative outside the domain.
    pub fn interior_distance(&self, u: f64, v: f64) -> f64 {
        match *self {
            Domain::Rectangle { u0, u1, v0, v1 } => {
                (u - u0).min(u1 - u).min(v - v0).min(v1 - v)
            }
            Domain::Disk {
                center_u,
                center_v,
                radius,
            } => radius - ((u - center_u).powi(2) + (v - center_v).powi(2)).sqrt(),
        }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.interior_distance(u, v) >= 0.0
    }
}

/// How to pick the tangent frame where the principal directions are not
/// determined (umbilic points, where every direction is principal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UmbilicFrameMode {
    /// Use the normalized `X_u` direction: reproducible run to run.
    #[default]
    Deterministic,
    /// Rotate the deterministic choice by a pseudo-random angle derived from
    /// the seed and the parameter point. Quantities that are genuinely
    /// frame-independent must not change under this mode; tests use it to
    /// prove they do not.
    Randomized { seed: u64 },
}

/// Construction-time options for [`Chart::new`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ChartOptions {
    /// The images of the `u = u0` and `u = u1` edges coincide (verified at
    /// construction); both edges are then interior seams, not boundary.
    pub periodic_u: bool,
    /// Likewise for the `v = v0` and `v = v1` edges.
    pub periodic_v: bool,
    pub umbilic_mode: UmbilicFrameMode,
    /// Euler characteristic of the patch, for the checks that need one.
    /// When absent it is inferred as `2 - (number of boundary loops)`,
    /// which is correct for genus-zero patches; surfaces with handles
    /// (a full torus: 0, a quarter torus: 1) must declare it.
    pub euler_characteristic: Option<i32>,
}

/// First and second derivatives of the chart map at a parameter point.
#[derive(Debug, Clone)]
pub(crate) struct ChartJets {
    pub x: Vector3<f64>,
    pub x_u: Vector3<f64>,
    pub x_v: Vector3<f64>,
    pub x_uu: Vector3<f64>,
    pub x_uv: Vector3<f64>,
    pub x_vv: Vector3<f64>,
}

/// A parametric surface patch: three coordinate expressions in `(u, v)`
/// over a [`Domain`], plus periodicity declarations.
///
/// Edges that are declared periodic, and edges whose image degenerates to a
/// single point (such as the poles of a latitude–longitude sphere), are
/// removed from the boundary. A chart whose boundary list comes out empty is
/// *closed*: boundary integrals over it are exactly zero.
#[derive(Debug, Clone)]
pub struct Chart {
    components: [Expression; 3],
    domain: Domain,
    periodic_u: bool,
    periodic_v: bool,
    umbilic_mode: UmbilicFrameMode,
    euler_characteristic: Option<i32>,
    boundary: Vec<BoundarySegment>,
    boundary_loops: usize,
    boundary_corners: bool,
    /// Largest `|X|` seen while validating; used to scale degeneracy
    /// thresholds so charts behave the same at any overall size.
    scale: f64,
}

impl Chart {
    /// Builds and validates a chart. Validation samples the interior to
    /// confirm the map is an immersion (`|X_u × X_v|` bounded away from
    /// zero), confirms any declared periodicity by comparing edge images,
    /// and classifies each candidate boundary edge as genuine, periodic
    /// seam, or degenerate (image is a single point).
    pub fn new(components: [Expression; 3], domain: Domain, options: ChartOptions) -> Result<Chart> {
        domain.validate()?;
        for (i, c) in components.iter().enumerate() {
            if c.variables() != ["u", "v"] {
                return Err(Error::InvalidChart {
                    detail: format!(
                        "component {} must be an expression in (u, v), got variables ({})",
                        ["x", "y", "z"][i],
                        c.variables().join(", ")
                    ),
                });
            }
        }
        if matches!(domain, Domain::Disk { .. }) && (options.periodic_u || options.periodic_v) {
            return Err(Error::InvalidChart {
                detail: "periodicity only applies to rectangle domains".into(),
            });
        }

        let mut chart = Chart {
            components,
            domain,
            periodic_u: options.periodic_u,
            periodic_v: options.periodic_v,
            umbilic_mode: options.umbilic_mode,
            euler_characteristic: options.euler_characteristic,
            boundary: Vec::new(),
            boundary_loops: 0,
            boundary_corners: false,
            scale: 0.0,
        };
        chart.scale = chart.validate_interior()?;
        chart.verify_periodicity()?;
        chart.boundary = boundary::build_boundary(&chart)?;
        let (loops, corners) = chart.summarize_boundary()?;
        chart.boundary_loops = loops;
        chart.boundary_corners = corners;
        Ok(chart)
    }

    /// Convenience wrapper: parses the three component formulas first.
    pub fn parse(components: [&str; 3], domain: Domain, options: ChartOptions) -> Result<Chart> {
        let [x, y, z] = components;
        Ok(Chart::new(
            [
                Expression::parse(x, &["u", "v"])?,
                Expression::parse(y, &["u", "v"])?,
                Expression::parse(z, &["u", "v"])?,
            ],
            domain,
            options,
        )?)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn periodic_u(&self) -> bool {
        self.periodic_u
    }

    pub fn periodic_v(&self) -> bool {
        self.periodic_v
    }

    pub fn umbilic_mode(&self) -> UmbilicFrameMode {
        self.umbilic_mode
    }

    /// Returns a copy using the given umbilic-frame policy.
    pub fn with_umbilic_mode(&self, mode: UmbilicFrameMode) -> Chart {
        let mut chart = self.clone();
        chart.umbilic_mode = mode;
        chart
    }

    /// The Euler characteristic declared at construction, if any.
    pub fn declared_euler_characteristic(&self) -> Option<i32> {
        self.euler_characteristic
    }

    /// Returns a copy with the given Euler characteristic declared.
    pub fn with_euler_characteristic(&self, chi: i32) -> Chart {
        let mut chart = self.clone();
        chart.euler_characteristic = Some(chi);
        chart
    }

    /// The declared Euler characteristic, or `2 - (boundary loop count)`
    /// when none was declared. The fallback is exact for genus-zero
    /// patches (sphere 2, disk or cap 1, annular band 0); anything with
    /// handles must declare its value explicitly.
    pub fn euler_characteristic(&self) -> i32 {
        self.euler_characteristic
            .unwrap_or(2 - self.boundary_loops as i32)
    }

    /// Number of connected boundary loops (zero for closed charts),
    /// determined at construction from which segment junctions share an
    /// image point.
    pub fn boundary_loop_count(&self) -> usize {
        self.boundary_loops
    }

    /// True when consecutive boundary segments meet at a genuine tangent
    /// discontinuity, as at the vertices of a parameter rectangle.
    pub fn boundary_has_corners(&self) -> bool {
        self.boundary_corners
    }

    /// The coordinate expressions `(x, y, z)`.
    pub fn components(&self) -> &[Expression; 3] {
        &self.components
    }

    /// Boundary segments in traversal order (counterclockwise in the
    /// parameter plane). Empty exactly when the chart is closed.
    pub fn boundary(&self) -> &[BoundarySegment] {
        &self.boundary
    }

    /// True when every candidate edge was a periodic seam or degenerate, so
    /// the surface has no boundary (sphere, torus).
    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub(crate) fn length_scale(&self) -> f64 {
        1.0 + self.scale
    }

    /// The surface point `X(u, v)`.
    pub fn point(&self, u: f64, v: f64) -> Result<Vector3<f64>> {
        Ok(self.jets(u, v)?.x)
    }

    /// All chart derivatives through second order at `(u, v)`.
    pub(crate) fn jets(&self, u: f64, v: f64) -> Result<ChartJets> {
        let mut cols = [Vector3::zeros(); 6];
        for (i, component) in self.components.iter().enumerate() {
            let jet = component.eval_jet2(&[u, v])?;
            cols[0][i] = jet.value();
            cols[1][i] = jet.grad(0);
            cols[2][i] = jet.grad(1);
            cols[3][i] = jet.hess(0, 0);
            cols[4][i] = jet.hess(0, 1);
            cols[5][i] = jet.hess(1, 1);
        }
        Ok(ChartJets {
            x: cols[0],
            x_u: cols[1],
            x_v: cols[2],
            x_uu: cols[3],
            x_uv: cols[4],
            x_vv: cols[5],
        })
    }

    /// Samples the interior on a grid: every point must be an immersion
    /// point. Returns the largest `|X|` seen (the chart's size scale).
    fn validate_interior(&self) -> Result<f64> {
        let mut scale: f64 = 0.0;
        for (u, v) in self.interior_grid(9) {
            let jets = self.jets(u, v)?;
            scale = scale.max(jets.x.norm());
            let density = jets.x_u.cross(&jets.x_v).norm();
            let floor = 1e-12 * (1.0 + jets.x_u.norm() * jets.x_v.norm());
            if density <= floor {
                return Err(Error::DegenerateChart { u, v, density });
            }
        }
        Ok(scale)
    }

    /// Interior sample grid used for validation (never touches the edges,
    /// where charts like the latitude–longitude sphere legitimately
    /// degenerate).
    fn interior_grid(&self, n: usize) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(n * n);
        match self.domain {
            Domain::Rectangle { u0, u1, v0, v1 } => {
                for i in 0..n {
                    for j in 0..n {
                        let fu = (i as f64 + 0.5) / n as f64;
                        let fv = (j as f64 + 0.5) / n as f64;
                        pts.push((u0 + fu * (u1 - u0), v0 + fv * (v1 - v0)));
                    }
                }
            }
            Domain::Disk {
                center_u,
                center_v,
                radius,
            } => {
                pts.push((center_u, center_v));
                for i in 0..n {
                    for j in 0..n {
                        let r = radius * (i as f64 + 0.5) / n as f64;
                        let phi = std::f64::consts::TAU * j as f64 / n as f64;
                        pts.push((center_u + r * phi.cos(), center_v + r * phi.sin()));
                    }
                }
            }
        }
        pts
    }

    /// Checks that declared periodic edge pairs actually coincide pointwise.
    fn verify_periodicity(&self) -> Result<()> {
        let Domain::Rectangle { u0, u1, v0, v1 } = *self.domain() else {
            return Ok(());
        };
        let tol = 1e-9 * self.length_scale();
        let samples = 17;
        if self.periodic_u {
            for j in 0..=samples {
                let v = v0 + (v1 - v0) * j as f64 / samples as f64;
                let gap = (self.point(u0, v)? - self.point(u1, v)?).norm();
                if gap > tol {
                    return Err(Error::InvalidChart {
                        detail: format!(
                            "declared u-periodicity but X(u0, {v:.6}) and X(u1, {v:.6}) differ by {gap:.3e}"
                        ),
                    });
                }
            }
        }
        if self.periodic_v {
            for i in 0..=samples {
                let u = u0 + (u1 - u0) * i as f64 / samples as f64;
                let gap = (self.point(u, v0)? - self.point(u, v1)?).norm();
                if gap > tol {
                    return Err(Error::InvalidChart {
                        detail: format!(
                            "declared v-periodicity but X({u:.6}, v0) and X({u:.6}, v1) differ by {gap:.3e}"
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> Chart {
        Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, std::f64::consts::PI), (0.0, std::f64::consts::TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn sphere_chart_is_closed() {
        // Pole edges degenerate, seam edges periodic: nothing remains.
        assert!(sphere().is_closed());
    }

    #[test]
    fn torus_chart_is_closed() {
        let torus = Chart::parse(
            [
                "(2 + cos(u))*cos(v)",
                "(2 + cos(u))*sin(v)",
                "sin(u)",
            ],
            Domain::rectangle((0.0, std::f64::consts::TAU), (0.0, std::f64::consts::TAU)),
            ChartOptions {
                periodic_u: true,
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(torus.is_closed());
    }

    #[test]
    fn band_has_two_boundary_circles() {
        let band = Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle(
                (std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2),
                (0.0, std::f64::consts::TAU),
            ),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(band.boundary().len(), 2);
    }

    #[test]
    fn planar_square_has_four_edges() {
        let plane = Chart::parse(
            ["u", "v", "0"],
            Domain::rectangle((0.0, 1.0), (0.0, 1.0)),
            ChartOptions::default(),
        )
        .unwrap();
        assert_eq!(plane.boundary().len(), 4);
        assert!(!plane.is_closed());
    }

    #[test]
    fn false_periodicity_is_rejected() {
        let err = Chart::parse(
            ["u", "v", "0"],
            Domain::rectangle((0.0, 1.0), (0.0, 1.0)),
            ChartOptions {
                periodic_u: true,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidChart { .. }));
    }

    #[test]
    fn non_immersion_is_rejected() {
        // Collapses everything to a curve: X_u × X_v = 0 everywhere.
        let err = Chart::parse(
            ["u + v", "u + v", "0"],
            Domain::rectangle((0.0, 1.0), (0.0, 1.0)),
            ChartOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateChart { .. }));
    }

    #[test]
    fn disk_domain_rejects_periodicity() {
        let err = Chart::parse(
            ["u", "v", "0"],
            Domain::disk((0.0, 0.0), 1.0),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidChart { .. }));
    }

    #[test]
    fn interior_distance_sign() {
        let d = Domain::disk((0.0, 0.0), 1.0);
        assert!(d.contains(0.5, 0.0));
        assert!(!d.contains(1.5, 0.0));
        assert!((d.interior_distance(0.0, 0.0) - 1.0).abs() < 1e-15);
        let r = Domain::rectangle((0.0, 2.0), (0.0, 1.0));
        assert!((r.interior_distance(0.5, 0.4) - 0.4).abs() < 1e-15);
    }
}
