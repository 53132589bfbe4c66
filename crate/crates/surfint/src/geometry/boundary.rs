//! Boundary curves of a chart: construction, evaluation, arc length.
//!
//! The boundary is a list of [`BoundarySegment`]s traversed
//! counterclockwise in the parameter plane. The global boundary parameter
//! `t` runs through `[0, k]` for `k` segments, one unit interval per
//! segment. Edges declared periodic and edges whose image collapses to a
//! point are not part of the boundary.

use super::frame::{build_frame, FramedPoint};
use super::{Chart, Domain};
use crate::quadrature::gauss_legendre;
use crate::{Error, Result};
use nalgebra::Vector3;

/// Parameter-plane curve of one boundary piece, parametrized over
/// `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentPath {
    /// Straight parameter-plane segment from `from` to `to`.
    Line { from: (f64, f64), to: (f64, f64) },
    /// Circular arc about `center`, angle interpolating from `start_angle`
    /// to `end_angle` (radians; decreasing range means clockwise).
    Arc {
        center: (f64, f64),
        radius: f64,
        start_angle: f64,
        end_angle: f64,
    },
}

/// One boundary piece of a chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySegment {
    path: SegmentPath,
}

impl BoundarySegment {
    pub fn line(from: (f64, f64), to: (f64, f64)) -> BoundarySegment {
        BoundarySegment {
            path: SegmentPath::Line { from, to },
        }
    }

    pub fn arc(
        center: (f64, f64),
        radius: f64,
        start_angle: f64,
        end_angle: f64,
    ) -> BoundarySegment {
        BoundarySegment {
            path: SegmentPath::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            },
        }
    }

    pub fn path(&self) -> &SegmentPath {
        &self.path
    }

    /// Parameter-plane point at local parameter `t ∈ [0, 1]`.
    pub fn uv(&self, t: f64) -> (f64, f64) {
        match self.path {
            SegmentPath::Line { from, to } => (
                from.0 + t * (to.0 - from.0),
                from.1 + t * (to.1 - from.1),
            ),
            SegmentPath::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => {
                let phi = start_angle + t * (end_angle - start_angle);
                (center.0 + radius * phi.cos(), center.1 + radius * phi.sin())
            }
        }
    }

    /// Parameter-plane distance from `(u, v)` to the nearest point of this
    /// segment.
    pub fn distance_to(&self, uv: (f64, f64)) -> f64 {
        let (pu, pv) = uv;
        match self.path {
            SegmentPath::Line { from, to } => {
                let (du, dv) = (to.0 - from.0, to.1 - from.1);
                let len_sq = du * du + dv * dv;
                let t = if len_sq == 0.0 {
                    0.0
                } else {
                    (((pu - from.0) * du + (pv - from.1) * dv) / len_sq).clamp(0.0, 1.0)
                };
                let (cu, cv) = (from.0 + t * du, from.1 + t * dv);
                ((pu - cu).powi(2) + (pv - cv).powi(2)).sqrt()
            }
            SegmentPath::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => {
                let (ru, rv) = (pu - center.0, pv - center.1);
                let angle = rv.atan2(ru);
                // Normalize into the swept interval, walking by full turns.
                let (lo, hi) = if start_angle <= end_angle {
                    (start_angle, end_angle)
                } else {
                    (end_angle, start_angle)
                };
                let mut phi = angle;
                while phi < lo {
                    phi += std::f64::consts::TAU;
                }
                while phi - std::f64::consts::TAU >= lo {
                    phi -= std::f64::consts::TAU;
                }
                if phi <= hi {
                    (ru.hypot(rv) - radius).abs()
                } else {
                    let dist_at = |a: f64| {
                        let (cu, cv) = (
                            center.0 + radius * a.cos(),
                            center.1 + radius * a.sin(),
                        );
                        (pu - cu).hypot(pv - cv)
                    };
                    dist_at(lo).min(dist_at(hi))
                }
            }
        }
    }

    /// First derivative of [`uv`](Self::uv) with respect to `t`.
    pub fn uv_velocity(&self, t: f64) -> (f64, f64) {
        match self.path {
            SegmentPath::Line { from, to } => (to.0 - from.0, to.1 - from.1),
            SegmentPath::Arc {
                center: _,
                radius,
                start_angle,
                end_angle,
            } => {
                let sweep = end_angle - start_angle;
                let phi = start_angle + t * sweep;
                (-radius * sweep * phi.sin(), radius * sweep * phi.cos())
            }
        }
    }

    /// Second derivative of [`uv`](Self::uv) with respect to `t`.
    pub fn uv_acceleration(&self, t: f64) -> (f64, f64) {
        match self.path {
            SegmentPath::Line { .. } => (0.0, 0.0),
            SegmentPath::Arc {
                center: _,
                radius,
                start_angle,
                end_angle,
            } => {
                let sweep = end_angle - start_angle;
                let phi = start_angle + t * sweep;
                (
                    -radius * sweep * sweep * phi.cos(),
                    -radius * sweep * sweep * phi.sin(),
                )
            }
        }
    }

    /// The same curve traversed the opposite way. Boundary integrals over a
    /// reversed segment are exactly negated.
    pub fn reversed(&self) -> BoundarySegment {
        match self.path {
            SegmentPath::Line { from, to } => BoundarySegment::line(to, from),
            SegmentPath::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => BoundarySegment::arc(center, radius, end_angle, start_angle),
        }
    }
}

/// Surface data along the boundary at one parameter value: the interior
/// frame at the point plus arc-length derivatives of the curve.
#[derive(Debug, Clone)]
pub struct BoundaryPoint {
    /// Full surface frame at the underlying point.
    pub frame: FramedPoint,
    /// Global boundary parameter this was evaluated at.
    pub t: f64,
    /// `|dX/dt|`: converts parameter integrals to arc-length integrals.
    pub speed: f64,
    /// Unit tangent `dX/ds` of the boundary curve.
    pub x_s: Vector3<f64>,
    /// Curvature vector `d²X/ds²`.
    pub x_ss: Vector3<f64>,
    /// Arc-length derivative of the surface normal along the curve.
    pub n_s: Vector3<f64>,
    /// Geodesic curvature `det(X_s, X_ss, N)`, positive when the curve
    /// bends toward the surface's interior side of its tangent. A
    /// counterclockwise unit circle in the plane (normal `+e₃`) has
    /// `κ_g = +1`.
    pub kappa_g: f64,
}

/// Classifies the candidate edges of the domain and returns the surviving
/// boundary segments in counterclockwise order.
pub(super) fn build_boundary(chart: &Chart) -> Result<Vec<BoundarySegment>> {
    let candidates: Vec<BoundarySegment> = match *chart.domain() {
        Domain::Rectangle { u0, u1, v0, v1 } => {
            let bottom = BoundarySegment::line((u0, v0), (u1, v0));
            let right = BoundarySegment::line((u1, v0), (u1, v1));
            let top = BoundarySegment::line((u1, v1), (u0, v1));
            let left = BoundarySegment::line((u0, v1), (u0, v0));
            let mut keep = Vec::new();
            if !chart.periodic_v() {
                keep.push(bottom);
            }
            if !chart.periodic_u() {
                keep.push(right);
            }
            if !chart.periodic_v() {
                keep.push(top);
            }
            if !chart.periodic_u() {
                keep.push(left);
            }
            keep
        }
        Domain::Disk {
            center_u,
            center_v,
            radius,
        } => vec![BoundarySegment::arc(
            (center_u, center_v),
            radius,
            0.0,
            std::f64::consts::TAU,
        )],
    };

    let mut boundary = Vec::new();
    for seg in candidates {
        if !edge_is_degenerate(chart, &seg)? {
            boundary.push(seg);
        }
    }
    Ok(boundary)
}

/// An edge is degenerate when the chart maps the whole edge to a single
/// point (zero speed everywhere), like the pole edges of a
/// latitude–longitude sphere. Detected by sampling the speed.
fn edge_is_degenerate(chart: &Chart, seg: &BoundarySegment) -> Result<bool> {
    let samples = 33;
    let mut max_speed: f64 = 0.0;
    for i in 0..=samples {
        let t = i as f64 / samples as f64;
        max_speed = max_speed.max(chart.segment_speed(seg, t)?);
        if max_speed > 1e-9 * chart.length_scale() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Chart {
    /// Splits a global boundary parameter into (segment index, local
    /// parameter).
    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let k = self.boundary().len();
        if k == 0 {
            return Err(Error::NoBoundary);
        }
        if !(0.0..=k as f64).contains(&t) {
            return Err(Error::BoundaryParameterRange { t, segments: k });
        }
        let i = (t.floor() as usize).min(k - 1);
        Ok((i, t - i as f64))
    }

    /// Speed `|dX/dt|` along a segment at local parameter `t`.
    pub(crate) fn segment_speed(&self, seg: &BoundarySegment, t: f64) -> Result<f64> {
        let (u, v) = seg.uv(t);
        let (du, dv) = seg.uv_velocity(t);
        let jets = self.jets(u, v)?;
        Ok((jets.x_u * du + jets.x_v * dv).norm())
    }

    /// Evaluates boundary data at global parameter `t ∈ [0, k]` for `k`
    /// segments. Fails with [`Error::NoBoundary`] on closed charts.
    pub fn boundary_point(&self, t: f64) -> Result<BoundaryPoint> {
        let (i, local) = self.locate(t)?;
        let seg = self.boundary()[i];
        self.boundary_point_on_segment(&seg, local, t)
    }

    /// Boundary data on an explicit segment (which need not belong to this
    /// chart's boundary list; orientation tests use reversed copies).
    pub(crate) fn boundary_point_on_segment(
        &self,
        seg: &BoundarySegment,
        local: f64,
        label: f64,
    ) -> Result<BoundaryPoint> {
        let (u, v) = seg.uv(local);
        let (du, dv) = seg.uv_velocity(local);
        let (ddu, ddv) = seg.uv_acceleration(local);
        let jets = self.jets(u, v)?;
        let frame = build_frame(self, u, v, &jets)?;

        let xdot = jets.x_u * du + jets.x_v * dv;
        let speed = xdot.norm();
        if speed <= 1e-12 * self.length_scale() {
            return Err(Error::ZeroSpeedBoundary { t: label });
        }
        // Chain rule: Ẍ = X_uu u̇² + 2 X_uv u̇v̇ + X_vv v̇² + X_u ü + X_v v̈.
        let xddot = jets.x_uu * (du * du)
            + jets.x_uv * (2.0 * du * dv)
            + jets.x_vv * (dv * dv)
            + jets.x_u * ddu
            + jets.x_v * ddv;

        let x_s = xdot / speed;
        // Reparametrize to arc length: d²X/ds² is the normal part of
        // Ẍ/speed² relative to the curve tangent.
        let x_ss = (xddot - x_s * x_s.dot(&xddot)) / (speed * speed);
        let n_s = (frame.n_u * du + frame.n_v * dv) / speed;
        let kappa_g = x_s.cross(&x_ss).dot(&frame.n);

        Ok(BoundaryPoint {
            frame,
            t: label,
            speed,
            x_s,
            x_ss,
            n_s,
            kappa_g,
        })
    }

    /// Arc length of one segment's image, by composite Gauss–Legendre
    /// integration of the speed up to local parameter `upto`.
    pub(crate) fn partial_segment_length(&self, seg: &BoundarySegment, upto: f64) -> Result<f64> {
        if upto <= 0.0 {
            return Ok(0.0);
        }
        self.arc_length_between_on_segment(seg, 0.0, upto)
    }

    /// Arc length along a segment between two local parameters.
    pub(crate) fn arc_length_between_on_segment(
        &self,
        seg: &BoundarySegment,
        t0: f64,
        t1: f64,
    ) -> Result<f64> {
        let nodes = gauss_legendre(8);
        let panels = 16;
        let mut total = 0.0;
        for p in 0..panels {
            let a = t0 + (t1 - t0) * p as f64 / panels as f64;
            let b = t0 + (t1 - t0) * (p + 1) as f64 / panels as f64;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for &(node, weight) in &nodes {
                total += weight * half * self.segment_speed(seg, mid + half * node)?;
            }
        }
        Ok(total)
    }

    /// Total length of the boundary image (zero for closed charts).
    pub fn boundary_length(&self) -> Result<f64> {
        let mut total = 0.0;
        for seg in self.boundary() {
            total += self.partial_segment_length(seg, 1.0)?;
        }
        Ok(total)
    }

    /// Arc length from the boundary start (`t = 0`) to parameter `t`,
    /// accumulated across segments in traversal order.
    pub fn boundary_arclength(&self, t: f64) -> Result<f64> {
        let (i, local) = self.locate(t)?;
        let mut s = 0.0;
        for seg in &self.boundary()[..i] {
            s += self.partial_segment_length(seg, 1.0)?;
        }
        s += self.partial_segment_length(&self.boundary()[i], local)?;
        Ok(s)
    }

    /// Whether the junction between consecutive segments is a shared image
    /// point (as opposed to the segments lying on different boundary
    /// loops).
    fn junction_coincides(&self, j: usize) -> Result<bool> {
        let k = self.boundary().len();
        let end = self.boundary()[j].uv(1.0);
        let start = self.boundary()[(j + 1) % k].uv(0.0);
        let a = self.point(end.0, end.1)?;
        let b = self.point(start.0, start.1)?;
        Ok((a - b).norm() <= 1e-9 * self.length_scale())
    }

    /// Computes the structural boundary summary `(loop count, has corners)`
    /// once, at construction time.
    ///
    /// Segments are stored in traversal order, so a loop boundary shows up
    /// as a junction whose two sides map to different points; if every
    /// junction closes up, the whole boundary is a single loop. A corner is
    /// a coinciding junction where the unit tangents of the two sides
    /// disagree; arc-length boundary formulas assume a C¹ boundary and do
    /// not hold across corners.
    pub(crate) fn summarize_boundary(&self) -> Result<(usize, bool)> {
        let k = self.boundary().len();
        if k == 0 {
            return Ok((0, false));
        }
        let mut open_junctions = 0;
        let mut has_corners = false;
        for j in 0..k {
            if !self.junction_coincides(j)? {
                open_junctions += 1;
                continue;
            }
            let end = self.boundary_point_on_segment(&self.boundary()[j], 1.0, j as f64 + 1.0)?;
            let next = &self.boundary()[(j + 1) % k];
            let start = self.boundary_point_on_segment(next, 0.0, ((j + 1) % k) as f64)?;
            if end.x_s.dot(&start.x_s) < 1.0 - 1e-9 {
                has_corners = true;
            }
        }
        Ok((open_junctions.max(1), has_corners))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ChartOptions;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

    fn flat_disk() -> Chart {
        Chart::parse(
            ["u", "v", "0"],
            Domain::disk((0.0, 0.0), 1.0),
            ChartOptions::default(),
        )
        .unwrap()
    }

    fn band() -> Chart {
        Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((FRAC_PI_4, FRAC_PI_2), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    fn square() -> Chart {
        Chart::parse(
            ["u", "v", "0"],
            Domain::rectangle((0.0, 1.0), (0.0, 1.0)),
            ChartOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn unit_circle_boundary_data() {
        let disk = flat_disk();
        // t = 0.25 on the single arc: angle π/2, point (0, 1, 0).
        let bp = disk.boundary_point(0.25).unwrap();
        assert!((bp.frame.x - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-14);
        assert!((bp.x_s - Vector3::new(-1.0, 0.0, 0.0)).norm() < 1e-13);
        // Counterclockwise circle with normal +e₃: κ_g = +1.
        assert!((bp.kappa_g - 1.0).abs() < 1e-12);
        assert!((bp.speed - TAU).abs() < 1e-12);
        assert!(bp.n_s.norm() < 1e-12);
        // Curvature vector points to the center.
        assert!((bp.x_ss - Vector3::new(0.0, -1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn circle_lengths() {
        let disk = flat_disk();
        assert!((disk.boundary_length().unwrap() - TAU).abs() < 1e-12);
        assert!((disk.boundary_arclength(0.5).unwrap() - PI).abs() < 1e-12);
        assert!(disk.boundary_arclength(0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn band_boundary_geometry() {
        let band = band();
        // Two latitude circles: radii sin(π/2) = 1 and sin(π/4).
        let expect = TAU * (1.0 + FRAC_PI_4.sin());
        assert!((band.boundary_length().unwrap() - expect).abs() < 1e-10);
        assert_eq!(band.boundary_loop_count(), 2);
        assert!(!band.boundary_has_corners());
        // Equator of the unit sphere is a geodesic.
        let on_equator = band.boundary_point(0.5).unwrap();
        assert!(on_equator.kappa_g.abs() < 1e-12);
    }

    #[test]
    fn square_has_one_loop_with_corners() {
        let square = square();
        assert_eq!(square.boundary_loop_count(), 1);
        assert!(square.boundary_has_corners());
        assert!((square.boundary_length().unwrap() - 4.0).abs() < 1e-12);
        // Arc length accumulates across segments: halfway along edge 3.
        assert!((square.boundary_arclength(3.5).unwrap() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn closed_chart_has_no_boundary_parameters() {
        let sphere = Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, PI), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(matches!(
            sphere.boundary_point(0.5),
            Err(Error::NoBoundary)
        ));
        assert_eq!(sphere.boundary_loop_count(), 0);
        assert_eq!(sphere.boundary_length().unwrap(), 0.0);
    }

    #[test]
    fn out_of_range_parameter_is_rejected() {
        let square = square();
        assert!(matches!(
            square.boundary_point(4.5),
            Err(Error::BoundaryParameterRange { .. })
        ));
        assert!(matches!(
            square.boundary_point(-0.1),
            Err(Error::BoundaryParameterRange { .. })
        ));
    }

    #[test]
    fn reversed_segment_retraces_the_path() {
        let seg = BoundarySegment::arc((1.0, 2.0), 0.5, 0.3, 2.0);
        let rev = seg.reversed();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let a = seg.uv(t);
            let b = rev.uv(1.0 - t);
            assert!((a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
        }
        let vf = seg.uv_velocity(0.3);
        let vr = rev.uv_velocity(0.7);
        assert!((vf.0 + vr.0).abs() < 1e-15 && (vf.1 + vr.1).abs() < 1e-15);
    }

    #[test]
    fn latitude_circle_geodesic_curvature() {
        // On the unit sphere the latitude circle at colatitude θ has
        // geodesic curvature cot θ with respect to the outward normal when
        // traversed counterclockwise seen from outside the pole.
        let cap_like = band();
        // Boundary segment 1 is the u = π/4 edge traversed with decreasing
        // v; relative to the enclosed band that is the "top" rim.
        let bp = cap_like.boundary_point(1.5).unwrap();
        let expect = 1.0 / FRAC_PI_4.tan();
        assert!(
            (bp.kappa_g + expect).abs() < 1e-10,
            "kappa_g = {}, expected {}",
            bp.kappa_g,
            -expect
        );
    }
}
