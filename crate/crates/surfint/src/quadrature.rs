//! Composite Gauss–Legendre quadrature over chart domains and boundaries.
//!
//! Surface integrals tensor a one-dimensional rule over a panel grid
//! (rectangles directly, disks in polar coordinates with the `r` Jacobian).
//! Boundary integrals run the rule over each boundary segment. Every
//! integral is also computed on a once-refined grid (doubled panel counts);
//! the difference is reported as the error estimate, so callers get
//! `value`, `refined_value`, and `est_error` without extra bookkeeping.
//!
//! Summation is compensated (Neumaier) and the traversal order is fixed, so
//! repeated runs produce bit-identical results.

use crate::geometry::{BoundaryPoint, BoundarySegment, Chart, Domain, FramedPoint};
use crate::{Error, Result};
use nalgebra::Vector3;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// in ascending node order.
///
/// Computed by Newton iteration on the Legendre recurrence and mirrored, so
/// the rule is symmetric to the last bit. Exact (to rounding) for
/// polynomials of degree `2n - 1`.
///
/// # Panics
/// If `n` is outside `1..=64`; public entry points validate first via
/// [`QuadratureSpec::validate`].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!((1..=64).contains(&n), "unsupported rule size {n}");
    let mut rule = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-based initial guess for the i-th largest root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Roots come out in descending order; store symmetric pairs.
        rule[n - 1 - i] = (x, w);
        rule[i] = (-x, w);
        if n % 2 == 1 && i == n / 2 {
            rule[i] = (0.0, w);
        }
    }
    rule
}

/// Resolution parameters for surface and boundary quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    /// Panels along `u` (radial panels for disk domains).
    pub panels_u: usize,
    /// Panels along `v` (angular panels for disk domains).
    pub panels_v: usize,
    /// Gauss–Legendre points per panel per direction.
    pub nodes_per_panel: usize,
    /// Panels per boundary segment.
    pub boundary_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels_u: 8,
            panels_v: 8,
            nodes_per_panel: 12,
            boundary_panels: 32,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidQuadratureSpec { reason });
        if !(1..=256).contains(&self.panels_u) || !(1..=256).contains(&self.panels_v) {
            return bad(format!(
                "panel counts must be in 1..=256, got {}x{}",
                self.panels_u, self.panels_v
            ));
        }
        if !(2..=32).contains(&self.nodes_per_panel) {
            return bad(format!(
                "nodes per panel must be in 2..=32, got {}",
                self.nodes_per_panel
            ));
        }
        if !(1..=4096).contains(&self.boundary_panels) {
            return bad(format!(
                "boundary panel count must be in 1..=4096, got {}",
                self.boundary_panels
            ));
        }
        Ok(())
    }

    /// The once-refined grid: every panel count doubled, nodes unchanged.
    /// Integrators compare against it for error estimation; convergence
    /// tests rerun whole checks on it.
    pub fn refined(&self) -> QuadratureSpec {
        QuadratureSpec {
            panels_u: self.panels_u * 2,
            panels_v: self.panels_v * 2,
            nodes_per_panel: self.nodes_per_panel,
            boundary_panels: self.boundary_panels * 2,
        }
    }
}

/// Neumaier compensated accumulator for one scalar.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    compensation: f64,
}

impl Compensated {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Values that can be integrated: closed under weighting and compensated
/// accumulation, with a norm for error estimates.
pub trait IntegralValue: Copy {
    type Accumulator: Default;
    fn zero() -> Self;
    fn accumulate(acc: &mut Self::Accumulator, weight: f64, term: Self);
    fn finish(acc: &Self::Accumulator) -> Self;
    fn distance(self, other: Self) -> f64;
}

impl IntegralValue for f64 {
    type Accumulator = Compensated;

    fn zero() -> f64 {
        0.0
    }

    fn accumulate(acc: &mut Compensated, weight: f64, term: f64) {
        acc.add(weight * term);
    }

    fn finish(acc: &Compensated) -> f64 {
        acc.total()
    }

    fn distance(self, other: f64) -> f64 {
        (self - other).abs()
    }
}

impl IntegralValue for Vector3<f64> {
    type Accumulator = [Compensated; 3];

    fn zero() -> Self {
        Vector3::zeros()
    }

    fn accumulate(acc: &mut [Compensated; 3], weight: f64, term: Self) {
        for i in 0..3 {
            acc[i].add(weight * term[i]);
        }
    }

    fn finish(acc: &[Compensated; 3]) -> Self {
        Vector3::new(acc[0].total(), acc[1].total(), acc[2].total())
    }

    fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

/// An integral value together with its refinement-based error estimate.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult<T> {
    /// Value at the requested resolution.
    pub value: T,
    /// Value on the once-refined grid (usually the more accurate of the
    /// two).
    pub refined_value: T,
    /// `|value - refined_value|`: a practical bound on the quadrature
    /// truncation error at the requested resolution.
    pub est_error: f64,
}

/// Integrates `f` against the surface measure `dA` over the chart:
/// `∫ f(point) |X_u × X_v| du dv`. The integrand sees the full frame and
/// must not include the area density itself.
pub fn surface_integral<T, F>(
    chart: &Chart,
    spec: &QuadratureSpec,
    mut f: F,
) -> Result<IntegralResult<T>>
where
    T: IntegralValue,
    F: FnMut(&FramedPoint) -> Result<T>,
{
    spec.validate()?;
    let value = surface_pass(chart, spec, &mut f)?;
    let refined_value = surface_pass(chart, &spec.refined(), &mut f)?;
    Ok(IntegralResult {
        value,
        refined_value,
        est_error: value.distance(refined_value),
    })
}

fn surface_pass<T, F>(chart: &Chart, spec: &QuadratureSpec, f: &mut F) -> Result<T>
where
    T: IntegralValue,
    F: FnMut(&FramedPoint) -> Result<T>,
{
    let rule = gauss_legendre(spec.nodes_per_panel);
    let mut acc = T::Accumulator::default();
    match *chart.domain() {
        Domain::Rectangle { u0, u1, v0, v1 } => {
            let du = (u1 - u0) / spec.panels_u as f64;
            let dv = (v1 - v0) / spec.panels_v as f64;
            for pu in 0..spec.panels_u {
                let cu = u0 + (pu as f64 + 0.5) * du;
                for pv in 0..spec.panels_v {
                    let cv = v0 + (pv as f64 + 0.5) * dv;
                    for &(nu, wu) in &rule {
                        let u = cu + 0.5 * du * nu;
                        for &(nv, wv) in &rule {
                            let v = cv + 0.5 * dv * nv;
                            let frame =
                                chart.frame_at(u, v).map_err(|e| e.at_node(u, v))?;
                            let term = f(&frame).map_err(|e| e.at_node(u, v))?;
                            let weight =
                                wu * wv * 0.25 * du * dv * frame.area_density;
                            T::accumulate(&mut acc, weight, term);
                        }
                    }
                }
            }
        }
        Domain::Disk {
            center_u,
            center_v,
            radius,
        } => {
            // Polar coordinates about the center; the extra Jacobian is r.
            let dr = radius / spec.panels_u as f64;
            let dphi = std::f64::consts::TAU / spec.panels_v as f64;
            for pr in 0..spec.panels_u {
                let cr = (pr as f64 + 0.5) * dr;
                for pp in 0..spec.panels_v {
                    let cphi = (pp as f64 + 0.5) * dphi;
                    for &(nr, wr) in &rule {
                        let r = cr + 0.5 * dr * nr;
                        for &(np, wp) in &rule {
                            let phi = cphi + 0.5 * dphi * np;
                            let u = center_u + r * phi.cos();
                            let v = center_v + r * phi.sin();
                            let frame =
                                chart.frame_at(u, v).map_err(|e| e.at_node(u, v))?;
                            let term = f(&frame).map_err(|e| e.at_node(u, v))?;
                            let weight =
                                wr * wp * 0.25 * dr * dphi * r * frame.area_density;
                            T::accumulate(&mut acc, weight, term);
                        }
                    }
                }
            }
        }
    }
    Ok(T::finish(&acc))
}

/// Integrates `f` against arc length over the whole boundary:
/// `∮ f(point) ds`. Pairings with a differential (`∮ F · dX`) are expressed
/// by dotting with the unit tangent: `f = F · X_s`.
///
/// On a closed chart the result is exactly zero — there is nothing to
/// integrate over — with a zero error estimate.
pub fn boundary_integral<T, F>(
    chart: &Chart,
    spec: &QuadratureSpec,
    mut f: F,
) -> Result<IntegralResult<T>>
where
    T: IntegralValue,
    F: FnMut(&BoundaryPoint) -> Result<T>,
{
    spec.validate()?;
    if chart.is_closed() {
        return Ok(IntegralResult {
            value: T::zero(),
            refined_value: T::zero(),
            est_error: 0.0,
        });
    }
    let segments: Vec<BoundarySegment> = chart.boundary().to_vec();
    let value = boundary_integral_over_segments(chart, &segments, spec, &mut f)?;
    let refined_value = boundary_integral_over_segments(chart, &segments, &spec.refined(), &mut f)?;
    Ok(IntegralResult {
        value,
        refined_value,
        est_error: value.distance(refined_value),
    })
}

/// One boundary quadrature pass over an explicit segment list, which need
/// not be the chart's own boundary: pass reversed copies to integrate with
/// the opposite orientation. Unlike [`boundary_integral`] this performs no
/// refinement pass and returns the bare value.
pub fn boundary_integral_over_segments<T, F>(
    chart: &Chart,
    segments: &[BoundarySegment],
    spec: &QuadratureSpec,
    f: &mut F,
) -> Result<T>
where
    T: IntegralValue,
    F: FnMut(&BoundaryPoint) -> Result<T>,
{
    let rule = gauss_legendre(spec.nodes_per_panel);
    let mut acc = T::Accumulator::default();
    for (index, segment) in segments.iter().enumerate() {
        let dt = 1.0 / spec.boundary_panels as f64;
        for panel in 0..spec.boundary_panels {
            let center = (panel as f64 + 0.5) * dt;
            for &(node, weight) in &rule {
                let local = center + 0.5 * dt * node;
                let point =
                    chart.boundary_point_on_segment(segment, local, index as f64 + local)?;
                let term = f(&point)?;
                // ds = |dX/dt| dt converts to an arc-length integral.
                T::accumulate(&mut acc, weight * 0.5 * dt * point.speed, term);
            }
        }
    }
    Ok(T::finish(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ChartOptions;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn rule_is_symmetric_and_normalized() {
        for n in 1..=32 {
            let rule = gauss_legendre(n);
            let total: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-14, "weights for n = {n}");
            for i in 0..n {
                let (x, w) = rule[i];
                let (xm, wm) = rule[n - 1 - i];
                assert_eq!(x, -xm, "node symmetry for n = {n}");
                assert_eq!(w, wm, "weight symmetry for n = {n}");
                if i > 0 {
                    assert!(rule[i - 1].0 < x, "ascending order for n = {n}");
                }
            }
        }
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        // n points are exact through degree 2n - 1; ∫_{-1}^{1} x^k dx is
        // 0 for odd k and 2/(k+1) for even k.
        for n in 2..=10 {
            let rule = gauss_legendre(n);
            for k in 0..=(2 * n - 1) {
                let got: f64 = rule.iter().map(|(x, w)| w * x.powi(k as i32)).sum();
                let expect = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!(
                    (got - expect).abs() < 1e-13,
                    "n = {n}, k = {k}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn known_nodes_for_small_rules() {
        let rule = gauss_legendre(2);
        let x = 1.0 / 3.0f64.sqrt();
        assert!((rule[0].0 + x).abs() < 1e-15);
        assert!((rule[1].0 - x).abs() < 1e-15);
        let rule = gauss_legendre(3);
        assert!((rule[1].0).abs() == 0.0);
        assert!((rule[1].1 - 8.0 / 9.0).abs() < 1e-15);
        assert!((rule[2].0 - (0.6f64).sqrt()).abs() < 1e-15);
    }

    fn unit_sphere() -> Chart {
        Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            crate::geometry::Domain::rectangle((0.0, PI), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn sphere_area() {
        let sphere = unit_sphere();
        let spec = QuadratureSpec::default();
        let result = surface_integral(&sphere, &spec, |_| Ok(1.0)).unwrap();
        assert!((result.value - 4.0 * PI).abs() < 1e-10, "{}", result.value);
        assert!(result.est_error < 1e-9);
    }

    #[test]
    fn disk_area_and_vector_integral() {
        let disk = Chart::parse(
            ["u", "v", "0"],
            crate::geometry::Domain::disk((0.0, 0.0), 1.0),
            ChartOptions::default(),
        )
        .unwrap();
        let spec = QuadratureSpec::default();
        let area = surface_integral(&disk, &spec, |_| Ok(1.0)).unwrap();
        assert!((area.value - PI).abs() < 1e-12);
        // ∫ X dA over the unit disk vanishes by symmetry.
        let centroid = surface_integral(&disk, &spec, |f| Ok(f.x)).unwrap();
        assert!(centroid.value.norm() < 1e-13);
        // ∫ (x² + y²) dA = π/2.
        let second = surface_integral(&disk, &spec, |f| Ok(f.x.norm_squared())).unwrap();
        assert!((second.value - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn normals_of_closed_surface_integrate_to_zero() {
        let sphere = unit_sphere();
        let result =
            surface_integral(&sphere, &QuadratureSpec::default(), |f| Ok(f.n)).unwrap();
        assert!(result.value.norm() < 1e-10);
    }

    #[test]
    fn boundary_integral_on_closed_chart_is_exactly_zero() {
        let sphere = unit_sphere();
        let result =
            boundary_integral(&sphere, &QuadratureSpec::default(), |b| Ok(b.kappa_g))
                .unwrap();
        assert_eq!(result.value, 0.0);
        assert_eq!(result.est_error, 0.0);
    }

    #[test]
    fn circle_circumference_and_moment() {
        let disk = Chart::parse(
            ["u", "v", "0"],
            crate::geometry::Domain::disk((0.0, 0.0), 1.0),
            ChartOptions::default(),
        )
        .unwrap();
        let spec = QuadratureSpec::default();
        let length = boundary_integral(&disk, &spec, |_| Ok(1.0)).unwrap();
        assert!((length.value - TAU).abs() < 1e-12);
        // ∮ x² ds = π on the unit circle.
        let moment = boundary_integral(&disk, &spec, |b| Ok(b.frame.x[0].powi(2))).unwrap();
        assert!((moment.value - PI).abs() < 1e-12);
    }

    #[test]
    fn reversing_segments_negates_boundary_integrals() {
        let square = Chart::parse(
            ["u", "v", "u*v"],
            crate::geometry::Domain::rectangle((0.0, 1.0), (0.0, 1.0)),
            ChartOptions::default(),
        )
        .unwrap();
        let spec = QuadratureSpec::default();
        let forward: Vec<_> = square.boundary().to_vec();
        let mut reversed: Vec<_> = forward.iter().map(|s| s.reversed()).collect();
        reversed.reverse();
        let mut f = |b: &BoundaryPoint| Ok(b.frame.x.dot(&b.x_s) + b.kappa_g);
        let a: f64 = boundary_integral_over_segments(&square, &forward, &spec, &mut f).unwrap();
        let b: f64 = boundary_integral_over_segments(&square, &reversed, &spec, &mut f).unwrap();
        assert!((a + b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn estimated_error_tracks_refinement() {
        let sphere = unit_sphere();
        let coarse = QuadratureSpec {
            panels_u: 2,
            panels_v: 2,
            nodes_per_panel: 4,
            boundary_panels: 4,
        };
        let result = surface_integral(&sphere, &coarse, |_| Ok(1.0)).unwrap();
        let true_error = (result.value - 4.0 * PI).abs();
        // The estimate has the right order of magnitude (within 100x).
        assert!(result.est_error > true_error / 100.0);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let disk = Chart::parse(
            ["u", "v", "0"],
            crate::geometry::Domain::disk((0.0, 0.0), 1.0),
            ChartOptions::default(),
        )
        .unwrap();
        let bad = QuadratureSpec {
            nodes_per_panel: 1,
            ..Default::default()
        };
        assert!(matches!(
            surface_integral(&disk, &bad, |_| Ok(1.0)),
            Err(Error::InvalidQuadratureSpec { .. })
        ));
    }
}
