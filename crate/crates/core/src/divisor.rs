//! Torus-invariant divisors D = Σ b_i D_i and their lattice polygons.

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToricDivisor {
    pub coeffs: Vec<i64>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        ToricDivisor { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        ToricDivisor {
            coeffs: vec![0; len],
        }
    }

    /// The linearly equivalent divisor D + div(χ^u), coefficients b_i + ⟨u, v_i⟩.
    /// Its polygon is P − u.
    pub fn translate(&self, fan: &Fan, u: LatticeVector) -> Result<ToricDivisor> {
        check_len(fan, self)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(fan.rays())
            .map(|(&b, &v)| {
                i64::try_from(b as i128 + u.dot(v))
                    .map_err(|_| Error::Overflow("translated divisor".into()))
            })
            .collect::<Result<_>>()?;
        Ok(ToricDivisor { coeffs })
    }
}

fn check_len(fan: &Fan, div: &ToricDivisor) -> Result<()> {
    if fan.len() != div.coeffs.len() {
        return Err(Error::LengthMismatch {
            expected: fan.len(),
            actual: div.coeffs.len(),
        });
    }
    Ok(())
}

/// D·D_i = b_{i-1} + b_{i+1} + a_i b_i.
pub fn intersection_numbers(fan: &Fan, div: &ToricDivisor) -> Result<Vec<i64>> {
    check_len(fan, div)?;
    let d = fan.len();
    let b = &div.coeffs;
    fan.self_intersections()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let v = b[(i + d - 1) % d] as i128 + b[(i + 1) % d] as i128 + a as i128 * b[i] as i128;
            i64::try_from(v).map_err(|_| Error::Overflow("intersection number".into()))
        })
        .collect()
}

/// Positivity on every invariant curve.
pub fn is_ample(fan: &Fan, div: &ToricDivisor) -> Result<bool> {
    Ok(intersection_numbers(fan, div)?.iter().all(|&n| n > 0))
}

/// An ample divisor built from the minimal model.
///
/// On the minimal fan: (1, 1, 1) for the projective plane, and on a
/// Hirzebruch fan weight 1 on rays with a_i ≠ 0 and A + 1 on the others,
/// A = max |a_i|. Each inverse blow-up then replaces D by 2·π*D − E, which
/// keeps every old intersection number positive and gives D·E = 1.
pub fn find_ample(fan: &Fan) -> ToricDivisor {
    let (minimal, steps) = fan.minimal_model();
    let a = minimal.self_intersections();
    let big = a.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    let mut coeffs: Vec<i64> = if minimal.len() == 3 {
        vec![1; 3]
    } else {
        a.iter().map(|&ai| if ai != 0 { 1 } else { big }).collect()
    };
    let mut current = minimal;
    for step in steps.iter().rev() {
        let d = current.len();
        let (bi, bj) = (coeffs[step.cone], coeffs[(step.cone + 1) % d]);
        let mut by_ray: HashMap<LatticeVector, i64> = current
            .rays()
            .iter()
            .zip(&coeffs)
            .map(|(&r, &b)| (r, 2 * b))
            .collect();
        by_ray.insert(step.ray, 2 * (bi + bj) - 1);
        let (bigger, _) = current
            .blow_up_with_index(step.cone)
            .expect("replaying a recorded contraction");
        coeffs = bigger.rays().iter().map(|r| by_ray[r]).collect();
        current = bigger;
    }
    debug_assert_eq!(&current, fan);
    let div = ToricDivisor { coeffs };
    assert!(
        is_ample(fan, &div).unwrap_or(false),
        "constructed divisor {:?} is not ample on {fan}",
        div.coeffs
    );
    div
}

/// The polygon {u : ⟨u, v_i⟩ ≥ -b_i for all i} of an ample divisor.
///
/// Vertex i is the corner cut out by rays i and i+1; the edge lying on the
/// line of ray i joins vertices i-1 and i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    fan: Fan,
    offsets: Vec<i64>,
    vertices: Vec<LatticeVector>,
}

#[derive(Serialize)]
struct PolygonJson<'a> {
    vertices: &'a [LatticeVector],
    offsets: &'a [i64],
}

impl Serialize for LatticePolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolygonJson {
            vertices: &self.vertices,
            offsets: &self.offsets,
        }
        .serialize(s)
    }
}

pub fn polygon_from_divisor(fan: &Fan, div: &ToricDivisor) -> Result<LatticePolygon> {
    let numbers = intersection_numbers(fan, div)?;
    if numbers.iter().any(|&n| n <= 0) {
        return Err(Error::NotAmple(numbers));
    }
    let d = fan.len();
    let b = &div.coeffs;
    let vertices = (0..d)
        .map(|i| {
            let (v, w) = (fan.rays()[i], fan.rays()[(i + 1) % d]);
            // Solve ⟨u, v⟩ = -b_i, ⟨u, w⟩ = -b_{i+1}; det(v, w) = 1.
            let (p, q) = (-(b[i] as i128), -(b[(i + 1) % d] as i128));
            let x = w.y as i128 * p - v.y as i128 * q;
            let y = -(w.x as i128) * p + v.x as i128 * q;
            match (i64::try_from(x), i64::try_from(y)) {
                (Ok(x), Ok(y)) => Ok(LatticeVector::new(x, y)),
                _ => Err(Error::Overflow("polygon vertex".into())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePolygon {
        fan: fan.clone(),
        offsets: b.clone(),
        vertices,
    })
}

impl LatticePolygon {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Every defining inequality ⟨u, v_i⟩ ≥ -b_i holds.
    pub fn contains(&self, u: LatticeVector) -> bool {
        self.fan
            .rays()
            .iter()
            .zip(&self.offsets)
            .all(|(&v, &b)| u.dot(v) >= -(b as i128))
    }

    /// Largest violation max_i (-b_i - ⟨u, v_i⟩), clipped at zero.
    pub fn violation(&self, u: (f64, f64)) -> f64 {
        self.fan
            .rays()
            .iter()
            .zip(&self.offsets)
            .map(|(v, &b)| -(b as f64) - (u.0 * v.x as f64 + u.1 * v.y as f64))
            .fold(0.0, f64::max)
    }

    /// Lattice points of P, in lexicographic (x, then y) order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let xmin = self.vertices.iter().map(|v| v.x).min().unwrap_or(0);
        let xmax = self.vertices.iter().map(|v| v.x).max().unwrap_or(-1);
        let ymin = self.vertices.iter().map(|v| v.y).min().unwrap_or(0);
        let ymax = self.vertices.iter().map(|v| v.y).max().unwrap_or(-1);
        (xmin..=xmax)
            .flat_map(|x| (ymin..=ymax).map(move |y| LatticeVector::new(x, y)))
            .filter(|&u| self.contains(u))
            .collect()
    }

    /// Number of lattice points of P, counted column by column without
    /// enumerating them.
    pub fn lattice_point_count(&self) -> u64 {
        let xmin = self.vertices.iter().map(|v| v.x).min().unwrap_or(0);
        let xmax = self.vertices.iter().map(|v| v.x).max().unwrap_or(-1);
        let mut total = 0u64;
        for x in xmin..=xmax {
            let (mut lo, mut hi) = (i128::MIN, i128::MAX);
            let mut empty = false;
            for (&v, &b) in self.fan.rays().iter().zip(&self.offsets) {
                // v.x * x + v.y * y >= -b
                let rhs = -(b as i128) - v.x as i128 * x as i128;
                let vy = v.y as i128;
                match vy.signum() {
                    1 => lo = lo.max(Integer::div_ceil(&rhs, &vy)),
                    -1 => hi = hi.min(Integer::div_floor(&rhs, &vy)),
                    _ => empty |= rhs > 0,
                }
            }
            if empty {
                continue;
            }
            if hi >= lo {
                total += (hi - lo + 1) as u64;
            }
        }
        total
    }

    /// Twice the area, by the shoelace formula.
    pub fn double_area(&self) -> i128 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].det(self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_points(&self) -> u64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (q.x - p.x).gcd(&(q.y - p.y)) as u64
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn div(c: &[i64]) -> ToricDivisor {
        ToricDivisor::new(c.to_vec())
    }

    fn pts(p: &LatticePolygon) -> Vec<(i64, i64)> {
        p.vertices().iter().map(|v| (v.x, v.y)).collect()
    }

    #[test]
    fn intersection_examples() {
        let p2 = Fan::projective_plane();
        assert_eq!(
            intersection_numbers(&p2, &div(&[1, 1, 1])).unwrap(),
            vec![3, 3, 3]
        );
        let f0 = Fan::hirzebruch(0);
        assert_eq!(
            intersection_numbers(&f0, &div(&[1, 1, 1, 1])).unwrap(),
            vec![2; 4]
        );
        let f5 = Fan::hirzebruch(5).blow_up(1).unwrap();
        assert_eq!(
            intersection_numbers(&f5, &ToricDivisor::zero(5)).unwrap(),
            vec![0; 5]
        );
        assert_eq!(
            intersection_numbers(&p2, &div(&[1, 1])),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn ampleness_examples() {
        assert!(is_ample(&Fan::projective_plane(), &div(&[1, 1, 1])).unwrap());
        assert!(!is_ample(&Fan::hirzebruch(3), &ToricDivisor::zero(4)).unwrap());
        assert!(!is_ample(&Fan::hirzebruch(2), &div(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn find_ample_examples() {
        let p2 = Fan::projective_plane();
        assert_eq!(find_ample(&p2).coeffs, vec![1, 1, 1]);

        for a in [0i64, 2, 3, 4, 7] {
            let f = Fan::hirzebruch(a);
            let d = find_ample(&f);
            assert_eq!(d.coeffs, vec![a + 1, 1, a + 1, 1]);
            assert_eq!(
                intersection_numbers(&f, &d).unwrap(),
                vec![2, a + 2, 2, 3 * a + 2]
            );
        }

        // One blow-up: old coefficients double, the new ray gets 2(1+1) - 1.
        let blown = p2.blow_up(0).unwrap();
        let d = find_ample(&blown);
        assert_eq!(d.coeffs, vec![2, 3, 2, 2]);
        assert_eq!(intersection_numbers(&blown, &d).unwrap()[1], 1);
    }

    #[test]
    fn polygon_examples() {
        let tri = polygon_from_divisor(&Fan::projective_plane(), &div(&[1, 1, 1])).unwrap();
        let mut v = pts(&tri);
        v.sort();
        assert_eq!(v, vec![(-1, -1), (-1, 2), (2, -1)]);
        assert_eq!(tri.lattice_points().len(), 10);

        let sq = polygon_from_divisor(&Fan::hirzebruch(0), &div(&[1, 1, 1, 1])).unwrap();
        let mut v = pts(&sq);
        v.sort();
        assert_eq!(v, vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]);
        assert_eq!(sq.lattice_points().len(), 9);

        assert!(matches!(
            polygon_from_divisor(&Fan::hirzebruch(2), &div(&[1, 1, 1, 1])),
            Err(Error::NotAmple(_))
        ));
    }

    #[test]
    fn vertices_counterclockwise() {
        let f = Fan::hirzebruch(3).blow_up(2).unwrap().blow_up(0).unwrap();
        let p = polygon_from_divisor(&f, &find_ample(&f)).unwrap();
        let n = p.vertices().len();
        for i in 0..n {
            let (a, b, c) = (
                p.vertices()[i],
                p.vertices()[(i + 1) % n],
                p.vertices()[(i + 2) % n],
            );
            let turn = LatticeVector::new(b.x - a.x, b.y - a.y)
                .det(LatticeVector::new(c.x - b.x, c.y - b.y));
            assert!(turn > 0);
        }
    }

    #[test]
    fn polygon_json() {
        let tri = polygon_from_divisor(&Fan::projective_plane(), &div(&[1, 1, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&tri).unwrap(),
            r#"{"vertices":[[-1,-1],[2,-1],[-1,2]],"offsets":[1,1,1]}"#
        );
    }
}
