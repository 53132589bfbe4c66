//! Helpers shared by the acceptance suite: seeded random polynomial
//! generation, domain point sampling, and an independent winding-number
//! oracle.

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::StandardNormal;
use surfint::fields::{AmbientField, TangentField};
use surfint::geometry::{Chart, Domain};

/// All monomial exponent triples `(i, j, k)` with `i + j + k <= max_degree`.
pub fn monomials(max_degree: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=max_degree {
        for i in 0..=total {
            for j in 0..=(total - i) {
                out.push((i, j, total - i - j));
            }
        }
    }
    out
}

fn monomial_text(exponents: (u32, u32, u32)) -> String {
    let mut factors = Vec::new();
    for (var, e) in [("x", exponents.0), ("y", exponents.1), ("z", exponents.2)] {
        match e {
            0 => {}
            1 => factors.push(var.to_string()),
            _ => factors.push(format!("{var}^{e}")),
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// A random polynomial in `x, y, z` with coefficients uniform in [-1, 1],
/// rendered as a parseable expression.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: u32) -> String {
    let terms: Vec<String> = monomials(max_degree)
        .into_iter()
        .map(|m| {
            let coeff: f64 = rng.gen_range(-1.0..1.0);
            format!("({coeff:?})*{}", monomial_text(m))
        })
        .collect();
    terms.join(" + ")
}

/// A vector field whose three components are random polynomials.
pub fn random_polynomial_field<R: Rng>(rng: &mut R, max_degree: u32) -> AmbientField {
    let x = random_polynomial(rng, max_degree);
    let y = random_polynomial(rng, max_degree);
    let z = random_polynomial(rng, max_degree);
    AmbientField::parse([&x, &y, &z]).unwrap()
}

/// A uniform random parameter point with at least the given relative margin
/// from the domain edge.
pub fn random_interior_point<R: Rng>(rng: &mut R, domain: &Domain, margin: f64) -> (f64, f64) {
    match *domain {
        Domain::Rectangle { u0, u1, v0, v1 } => {
            let mu = margin * (u1 - u0);
            let mv = margin * (v1 - v0);
            (
                rng.gen_range(u0 + mu..u1 - mu),
                rng.gen_range(v0 + mv..v1 - mv),
            )
        }
        Domain::Disk {
            center_u,
            center_v,
            radius,
        } => {
            let r = radius * (1.0 - margin) * rng.gen_range(0.0f64..1.0).sqrt();
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            (center_u + r * phi.cos(), center_v + r * phi.sin())
        }
    }
}

/// A uniform random unit vector.
pub fn random_unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Brute-force winding number of the projected field around a parameter
/// circle, measured against the `(X_v/|X_v|, N x X_v/|X_v|)` frame — a
/// different reference frame and accumulation scheme than the library uses.
/// Panics if the sampling is too coarse to trust (any single step turning
/// more than a quarter turn) or if the total is not close to whole turns.
pub fn winding_oracle(
    chart: &Chart,
    field: &TangentField,
    center: (f64, f64),
    radius: f64,
    samples: usize,
) -> i32 {
    let angles: Vec<f64> = (0..=samples)
        .map(|i| std::f64::consts::TAU * i as f64 / samples as f64)
        .collect();
    let mut prev: Option<f64> = None;
    let mut total = 0.0;
    for phi in angles {
        let u = center.0 + radius * phi.cos();
        let v = center.1 + radius * phi.sin();
        let frame = chart.frame_at(u, v).unwrap();
        let raw = field.at(&frame).unwrap();
        let e1 = frame.x_v / frame.x_v.norm();
        let e2 = frame.n.cross(&e1);
        let theta = raw.dot(&e2).atan2(raw.dot(&e1));
        if let Some(p) = prev {
            let mut step = theta - p;
            while step > std::f64::consts::PI {
                step -= std::f64::consts::TAU;
            }
            while step < -std::f64::consts::PI {
                step += std::f64::consts::TAU;
            }
            assert!(
                step.abs() < std::f64::consts::FRAC_PI_2,
                "winding oracle undersampled: step {step}"
            );
            total += step;
        }
        prev = Some(theta);
    }
    let turns = total / std::f64::consts::TAU;
    let rounded = turns.round();
    assert!(
        (turns - rounded).abs() < 0.05,
        "winding oracle did not close up: {turns} turns"
    );
    rounded as i32
}
