//! Pointwise differential-geometric data: normals, curvatures, principal
//! frames.

use super::{Chart, ChartJets, UmbilicFrameMode};
use crate::{Error, Result};
use nalgebra::Vector3;
use std::hash::{Hash, Hasher};

/// Relative spread `κ₂ - κ₁` below which a point is treated as umbilic and
/// the principal directions are chosen by policy instead of by eigenvector.
const UMBILIC_SPREAD: f64 = 1e-9;

/// Everything about the surface at one parameter point: position, tangent
/// and normal vectors, curvatures, and the principal frame `(P, Q, N)`.
///
/// The frame is orthonormal and right-handed (`P × Q = N`), `κ₁ ≤ κ₂`, and
/// the differential of the normal acts by `dN(P) = -κ₁ P`,
/// `dN(Q) = -κ₂ Q`.
#[derive(Debug, Clone)]
pub struct FramedPoint {
    /// Parameter point `(u, v)` this data was evaluated at.
    pub uv: (f64, f64),
    /// Surface point `X(u, v)`.
    pub x: Vector3<f64>,
    /// Unit normal `X_u × X_v / |X_u × X_v|`.
    pub n: Vector3<f64>,
    /// Unit principal direction for `κ₁`.
    pub p: Vector3<f64>,
    /// Unit principal direction for `κ₂`; always `N × P`.
    pub q: Vector3<f64>,
    /// Smaller principal curvature.
    pub kappa1: f64,
    /// Larger principal curvature.
    pub kappa2: f64,
    /// Mean curvature `(κ₁ + κ₂)/2`.
    pub mean: f64,
    /// Gauss curvature `κ₁ κ₂`.
    pub gauss: f64,
    /// Whether the principal directions were underdetermined here.
    pub umbilic: bool,
    /// Chart partials (not unit vectors).
    pub x_u: Vector3<f64>,
    pub x_v: Vector3<f64>,
    /// Partials of the unit normal.
    pub n_u: Vector3<f64>,
    pub n_v: Vector3<f64>,
    /// Area density `|X_u × X_v|` (the surface-measure Jacobian).
    pub area_density: f64,
}

impl FramedPoint {
    /// Coefficients `(a, b)` with `w = a X_u + b X_v` for a tangent vector
    /// `w`, via the first fundamental form. For non-tangent `w` this is the
    /// tangential projection's coefficients.
    pub fn tangent_to_param(&self, w: &Vector3<f64>) -> (f64, f64) {
        let e = self.x_u.dot(&self.x_u);
        let f = self.x_u.dot(&self.x_v);
        let g = self.x_v.dot(&self.x_v);
        let det = e * g - f * f;
        let wu = w.dot(&self.x_u);
        let wv = w.dot(&self.x_v);
        ((g * wu - f * wv) / det, (e * wv - f * wu) / det)
    }

    /// `dN(w)`: derivative of the unit normal along the tangent vector `w`.
    pub fn derivative_of_normal_along(&self, w: &Vector3<f64>) -> Vector3<f64> {
        let (a, b) = self.tangent_to_param(w);
        a * self.n_u + b * self.n_v
    }

    pub fn is_umbilic(&self) -> bool {
        self.umbilic
    }
}

impl Chart {
    /// Evaluates the full frame at a parameter point.
    ///
    /// The point need not lie inside the domain — expressions extend
    /// wherever they are defined — but only interior and boundary points
    /// carry geometric meaning for the patch.
    pub fn frame_at(&self, u: f64, v: f64) -> Result<FramedPoint> {
        let jets = self.jets(u, v)?;
        build_frame(self, u, v, &jets)
    }
}

/// Assembles a [`FramedPoint`] from already-computed chart jets.
pub(crate) fn build_frame(chart: &Chart, u: f64, v: f64, jets: &ChartJets) -> Result<FramedPoint> {
    let w = jets.x_u.cross(&jets.x_v);
    let density = w.norm();
    if density <= 1e-12 * (1.0 + jets.x_u.norm() * jets.x_v.norm()) {
        return Err(Error::DegenerateChart { u, v, density });
    }
    let n = w / density;

    // Product rule on W = X_u × X_v, then project: the derivative of
    // W/|W| is (W' - N (N·W')) / |W|.
    let w_u = jets.x_uu.cross(&jets.x_v) + jets.x_u.cross(&jets.x_uv);
    let w_v = jets.x_uv.cross(&jets.x_v) + jets.x_u.cross(&jets.x_vv);
    let n_u = (w_u - n * n.dot(&w_u)) / density;
    let n_v = (w_v - n * n.dot(&w_v)) / density;

    // Orthonormal tangent basis by Gram–Schmidt on (X_u, X_v).
    let xu_norm = jets.x_u.norm();
    let e1 = jets.x_u / xu_norm;
    let c = e1.dot(&jets.x_v);
    let e2_raw = jets.x_v - c * e1;
    let e2_norm = e2_raw.norm();
    let e2 = e2_raw / e2_norm;

    // dN on the basis: e1 = X_u/|X_u| and e2 = (X_v - c e1)/|..| pull back
    // to parameter directions, where dN is (N_u, N_v).
    let dn_e1 = n_u / xu_norm;
    let dn_e2 = (n_v - (c / xu_norm) * n_u) / e2_norm;

    // Shape operator S = -dN in the (e1, e2) basis; symmetrized to wash out
    // rounding (it is symmetric exactly in exact arithmetic).
    let s11 = -e1.dot(&dn_e1);
    let s22 = -e2.dot(&dn_e2);
    let s12 = -0.5 * (e1.dot(&dn_e2) + e2.dot(&dn_e1));

    let m = 0.5 * (s11 + s22);
    let d = 0.5 * (s11 - s22);
    let disc = d.hypot(s12);
    let kappa1 = m - disc;
    let kappa2 = m + disc;

    let umbilic = (kappa2 - kappa1) <= UMBILIC_SPREAD * (1.0 + kappa1.abs() + kappa2.abs());
    let (c1, c2) = if umbilic {
        let theta = match chart.umbilic_mode {
            UmbilicFrameMode::Deterministic => 0.0,
            UmbilicFrameMode::Randomized { seed } => umbilic_angle(seed, u, v),
        };
        (theta.cos(), theta.sin())
    } else {
        // Eigenvector of S for κ₁, from whichever row of S - κ₁ I is
        // better conditioned (s11 - κ₁ = d + disc, s22 - κ₁ = disc - d;
        // at least one is ≥ disc).
        let raw = if d >= 0.0 {
            (-s12, s11 - kappa1)
        } else {
            (s22 - kappa1, -s12)
        };
        let norm = raw.0.hypot(raw.1);
        let mut vec = (raw.0 / norm, raw.1 / norm);
        // Canonical sign so the frame is a deterministic function of the
        // point (eigenvectors are defined only up to sign).
        let flip = if vec.0.abs() >= vec.1.abs() {
            vec.0 < 0.0
        } else {
            vec.1 < 0.0
        };
        if flip {
            vec = (-vec.0, -vec.1);
        }
        vec
    };
    let p = c1 * e1 + c2 * e2;
    let q = n.cross(&p);

    Ok(FramedPoint {
        uv: (u, v),
        x: jets.x,
        n,
        p,
        q,
        kappa1,
        kappa2,
        mean: m,
        gauss: kappa1 * kappa2,
        umbilic,
        x_u: jets.x_u,
        x_v: jets.x_v,
        n_u,
        n_v,
        area_density: density,
    })
}

/// Deterministic pseudo-random angle in `[0, 2π)` from the seed and the
/// exact bit patterns of the parameter point.
fn umbilic_angle(seed: u64, u: f64, v: f64) -> f64 {
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    seed.hash(&mut hasher);
    u.to_bits().hash(&mut hasher);
    v.to_bits().hash(&mut hasher);
    (hasher.finish() as f64 / u64::MAX as f64) * std::f64::consts::TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ChartOptions, Domain};
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn sphere() -> Chart {
        Chart::parse(
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Domain::rectangle((0.0, PI), (0.0, TAU)),
            ChartOptions {
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    fn torus() -> Chart {
        Chart::parse(
            ["(2 + cos(u))*cos(v)", "(2 + cos(u))*sin(v)", "sin(u)"],
            Domain::rectangle((0.0, TAU), (0.0, TAU)),
            ChartOptions {
                periodic_u: true,
                periodic_v: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn unit_sphere_frame_at_equator() {
        let f = sphere().frame_at(FRAC_PI_2, 0.0).unwrap();
        // Outward normal equals the position on the unit sphere.
        assert!((f.n - f.x).norm() < 1e-14);
        assert!((f.x - Vector3::new(1.0, 0.0, 0.0)).norm() < 1e-14);
        // Outward normal makes both principal curvatures -1 here.
        assert!((f.kappa1 + 1.0).abs() < 1e-12);
        assert!((f.kappa2 + 1.0).abs() < 1e-12);
        assert!((f.mean + 1.0).abs() < 1e-12);
        assert!((f.gauss - 1.0).abs() < 1e-12);
        assert!(f.is_umbilic());
        // Deterministic umbilic policy: P along X_u = (0, 0, -1) here.
        assert!((f.p - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-13);
        assert!((f.q - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn plane_is_flat_and_umbilic() {
        let plane = Chart::parse(
            ["u", "v", "0"],
            Domain::rectangle((-1.0, 1.0), (-1.0, 1.0)),
            ChartOptions::default(),
        )
        .unwrap();
        let f = plane.frame_at(0.3, -0.4).unwrap();
        assert_eq!(f.kappa1, 0.0);
        assert_eq!(f.kappa2, 0.0);
        assert!(f.is_umbilic());
        assert!((f.n - Vector3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn torus_gauss_curvature_matches_closed_form() {
        // For X = ((2 + cos u) cos v, (2 + cos u) sin v, sin u) the Gauss
        // curvature is K = cos u / (2 + cos u), independent of orientation.
        let torus = torus();
        for &(u, v) in &[
            (0.1, 0.2),
            (1.0, 3.0),
            (2.5, 5.0),
            (PI, 1.0),
            (4.0, 0.7),
            (5.9, 2.2),
        ] {
            let f = torus.frame_at(u, v).unwrap();
            let expect = u.cos() / (2.0 + u.cos());
            assert!(
                (f.gauss - expect).abs() < 1e-10,
                "K at ({u}, {v}): {} vs {expect}",
                f.gauss
            );
            assert!(!f.is_umbilic());
        }
    }

    #[test]
    fn frame_is_orthonormal_and_right_handed() {
        let torus = torus();
        for i in 0..20 {
            let u = 0.05 + 6.2 * (i as f64) / 20.0;
            let v = 6.2 * ((i * 7 % 20) as f64) / 20.0;
            let f = torus.frame_at(u, v).unwrap();
            assert!((f.p.norm() - 1.0).abs() < 1e-12);
            assert!((f.q.norm() - 1.0).abs() < 1e-12);
            assert!((f.n.norm() - 1.0).abs() < 1e-12);
            assert!(f.p.dot(&f.q).abs() < 1e-12);
            assert!(f.p.dot(&f.n).abs() < 1e-12);
            assert!((f.p.cross(&f.q) - f.n).norm() < 1e-12);
        }
    }

    #[test]
    fn principal_directions_diagonalize_dn() {
        // dN(P) = -κ₁ P and dN(Q) = -κ₂ Q.
        let torus = torus();
        for &(u, v) in &[(0.4, 1.1), (2.0, 4.4), (5.5, 0.2)] {
            let f = torus.frame_at(u, v).unwrap();
            let dnp = f.derivative_of_normal_along(&f.p);
            let dnq = f.derivative_of_normal_along(&f.q);
            assert!((dnp + f.kappa1 * f.p).norm() < 1e-9, "dN(P) at ({u},{v})");
            assert!((dnq + f.kappa2 * f.q).norm() < 1e-9, "dN(Q) at ({u},{v})");
        }
    }

    #[test]
    fn normal_derivative_matches_finite_differences() {
        let torus = torus();
        let h = 1e-5;
        for &(u, v) in &[(0.4, 1.1), (2.0, 4.4), (3.3, 2.8)] {
            let f = torus.frame_at(u, v).unwrap();
            let np = torus.frame_at(u + h, v).unwrap().n;
            let nm = torus.frame_at(u - h, v).unwrap().n;
            let fd = (np - nm) / (2.0 * h);
            assert!((f.n_u - fd).norm() < 1e-8, "N_u at ({u},{v})");
            let np = torus.frame_at(u, v + h).unwrap().n;
            let nm = torus.frame_at(u, v - h).unwrap().n;
            let fd = (np - nm) / (2.0 * h);
            assert!((f.n_v - fd).norm() < 1e-8, "N_v at ({u},{v})");
        }
    }

    #[test]
    fn tangent_roundtrip_through_parameters() {
        let torus = torus();
        let f = torus.frame_at(1.3, 0.8).unwrap();
        let w = 0.7 * f.p - 1.9 * f.q;
        let (a, b) = f.tangent_to_param(&w);
        assert!((a * f.x_u + b * f.x_v - w).norm() < 1e-12);
    }

    #[test]
    fn randomized_umbilic_frames_stay_orthonormal() {
        let sphere = sphere().with_umbilic_mode(UmbilicFrameMode::Randomized { seed: 7 });
        let f = sphere.frame_at(1.0, 2.0).unwrap();
        assert!(f.is_umbilic());
        assert!((f.p.cross(&f.q) - f.n).norm() < 1e-12);
        assert!(f.p.dot(&f.n).abs() < 1e-12);
        // Same seed, same point: reproducible.
        let again = sphere.frame_at(1.0, 2.0).unwrap();
        assert!((f.p - again.p).norm() == 0.0);
        // Different seed: (almost surely) a different frame.
        let other = sphere
            .with_umbilic_mode(UmbilicFrameMode::Randomized { seed: 8 })
            .frame_at(1.0, 2.0)
            .unwrap();
        assert!((f.p - other.p).norm() > 1e-6);
    }
}
