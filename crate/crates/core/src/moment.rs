//! Floating-point checks of the torus-side facts the combinatorial gluing
//! relies on: sign profiles of characters and the algebraic moment map.
//!
//! Nothing here feeds back into the complex construction.

use serde::Serialize;

use crate::divisor::{polygon_from_divisor, ToricDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::gluing::SignHom;
use crate::lattice::LatticeVector;
use crate::random::Stream;

/// Default half-width of the sampling box in log-coordinates.
pub const SAMPLE_RADIUS: f64 = 3.0;

/// Side length of the injectivity grid.
pub const GRID_SIDE: usize = 32;

/// A point of the real torus (ℝ*)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    x1: f64,
    x2: f64,
}

impl TorusPoint {
    /// `None` if a coordinate is zero or not finite.
    pub fn new(x1: f64, x2: f64) -> Option<TorusPoint> {
        let ok = |x: f64| x != 0.0 && x.is_finite();
        (ok(x1) && ok(x2)).then_some(TorusPoint { x1, x2 })
    }

    pub fn coords(self) -> (f64, f64) {
        (self.x1, self.x2)
    }

    /// The point translated by t_ε, coordinatewise multiplication by signs.
    pub fn translate(self, eps: SignHom) -> TorusPoint {
        let (s1, s2) = eps.signs();
        TorusPoint {
            x1: self.x1 * s1 as f64,
            x2: self.x2 * s2 as f64,
        }
    }
}

impl From<SignHom> for TorusPoint {
    fn from(eps: SignHom) -> Self {
        let (x1, x2) = eps.torus_point();
        TorusPoint { x1, x2 }
    }
}

fn pow_int(base: f64, exp: i64) -> f64 {
    let (mut b, mut e) = if exp < 0 {
        (1.0 / base, exp.unsigned_abs())
    } else {
        (base, exp as u64)
    };
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}

/// χ^u(x) = x1^{u_x} · x2^{u_y}.
pub fn character(x: TorusPoint, u: LatticeVector) -> Result<f64> {
    let v = pow_int(x.x1, u.x) * pow_int(x.x2, u.y);
    if v.is_finite() && v != 0.0 {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "character {u} at {:?}",
            x.coords()
        )))
    }
}

pub fn sign_profile(x: TorusPoint) -> SignHom {
    let s = |v: f64| if v < 0.0 { -1 } else { 1 };
    SignHom::new(s(x.x1), s(x.x2))
}

/// Σ |χ^u(x)| u / Σ |χ^u(x)| over the given lattice points.
///
/// Weights are formed in log space and shifted by their maximum before
/// exponentiation, so the largest weight is exactly 1.
pub fn moment_map(x: TorusPoint, points: &[LatticeVector]) -> Result<(f64, f64)> {
    if points.is_empty() {
        return Err(Error::DegenerateWeights);
    }
    let (l1, l2) = (x.x1.abs().ln(), x.x2.abs().ln());
    let logs: Vec<f64> = points
        .iter()
        .map(|u| u.x as f64 * l1 + u.y as f64 * l2)
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut total, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for (u, &l) in points.iter().zip(&logs) {
        let w = (l - top).exp();
        total += w;
        sx += w * u.x as f64;
        sy += w * u.y as f64;
    }
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::DegenerateWeights);
    }
    Ok((sx / total, sy / total))
}

/// `n` points of T_ε with log-absolute coordinates uniform in [−R, R].
pub fn sample_t_epsilon(eps: SignHom, seed: u64, n: usize) -> Vec<TorusPoint> {
    sample_t_epsilon_with_radius(eps, seed, n, SAMPLE_RADIUS)
}

pub fn sample_t_epsilon_with_radius(
    eps: SignHom,
    seed: u64,
    n: usize,
    radius: f64,
) -> Vec<TorusPoint> {
    let mut rng = Stream::new(seed);
    let (s1, s2) = eps.signs();
    (0..n)
        .map(|_| {
            let r1 = (2.0 * rng.unit() - 1.0) * radius;
            let r2 = (2.0 * rng.unit() - 1.0) * radius;
            TorusPoint {
                x1: s1 as f64 * r1.exp(),
                x2: s2 as f64 * r2.exp(),
            }
        })
        .collect()
}

/// Outcome of the numeric suite for one fan and divisor.
#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub fan: Fan,
    pub divisor: ToricDivisor,
    /// Samples per sign homomorphism.
    pub samples: usize,
    /// Every sampled character has the sign predicted by its sign profile.
    pub signs_consistent: bool,
    pub max_inequality_violation: f64,
    pub translation_exact: bool,
    /// Least μ-distance between distinct points of the injectivity grid.
    pub min_mu_separation: f64,
}

impl MomentReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.signs_consistent
            && self.translation_exact
            && self.max_inequality_violation <= tolerance
            && self.min_mu_separation > tolerance
    }
}

/// Runs sign, containment, equivariance and injectivity checks.
///
/// For each ε, `samples` points of T_ε are drawn. The signs of χ^u at the
/// polygon's lattice points (and a few extra characters) are compared with
/// ε(u); μ of each sample is tested against the defining inequalities; and
/// μ at the sample is compared bit-for-bit with μ at all four
/// sign-translates. Injectivity is probed on a GRID_SIDE² grid in
/// log-coordinates inside T_{(+,+)}.
pub fn moment_check(
    fan: &Fan,
    divisor: &ToricDivisor,
    seed: u64,
    samples: usize,
) -> Result<MomentReport> {
    let polygon = polygon_from_divisor(fan, divisor)?;
    let points = polygon.lattice_points();
    let mut test_chars = points.clone();
    test_chars.extend([(1, 0), (0, 1), (1, 1), (3, -2), (-5, 7)].map(LatticeVector::from));

    let mut signs_consistent = true;
    let mut translation_exact = true;
    let mut max_violation: f64 = 0.0;
    for (k, &eps) in SignHom::ALL.iter().enumerate() {
        for x in sample_t_epsilon(eps, seed.wrapping_add(k as u64), samples) {
            let profile = sign_profile(x);
            signs_consistent &= profile == eps;
            for &u in &test_chars {
                let sign = if character(x, u)? < 0.0 { -1 } else { 1 };
                signs_consistent &= sign == profile.evaluate(u);
            }
            let mu = moment_map(x, &points)?;
            max_violation = max_violation.max(polygon.violation(mu));
            for other in SignHom::ALL {
                let moved = moment_map(x.translate(other), &points)?;
                translation_exact &=
                    moved.0.to_bits() == mu.0.to_bits() && moved.1.to_bits() == mu.1.to_bits();
            }
        }
    }

    Ok(MomentReport {
        fan: fan.clone(),
        divisor: divisor.clone(),
        samples,
        signs_consistent,
        max_inequality_violation: max_violation,
        translation_exact,
        min_mu_separation: grid_separation(&points, SAMPLE_RADIUS)?,
    })
}

/// Minimum μ-distance over pairs of distinct grid points. Grid spacing in
/// log-coordinates is 2R / (GRID_SIDE − 1), far above the 1e-6 separation
/// threshold, so every pair counts.
fn grid_separation(points: &[LatticeVector], radius: f64) -> Result<f64> {
    let step = 2.0 * radius / (GRID_SIDE - 1) as f64;
    let mut images = Vec::with_capacity(GRID_SIDE * GRID_SIDE);
    for i in 0..GRID_SIDE {
        for j in 0..GRID_SIDE {
            let (r1, r2) = (-radius + i as f64 * step, -radius + j as f64 * step);
            let x = TorusPoint::new(r1.exp(), r2.exp()).expect("exp is positive");
            images.push(moment_map(x, points)?);
        }
    }
    let mut best = f64::INFINITY;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            let (p, q) = (images[a], images[b]);
            best = best.min((p.0 - q.0).hypot(p.1 - q.1));
        }
    }
    Ok(best)
}
