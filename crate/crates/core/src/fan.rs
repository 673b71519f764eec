//! Smooth complete two-dimensional fans and their surgery.
//!
//! A [`Fan`] is stored as its ray generators in strict counterclockwise order,
//! starting from the ray with the smallest polar angle in [0, 2π). The only
//! validity condition is that every cyclically consecutive pair of rays has
//! determinant +1: this forces every angular gap to be smaller than π, the
//! cones to cover the plane exactly once, and every 2-cone to be unimodular.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, UnimodularMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FanJson", into = "FanJson")]
pub struct Fan {
    rays: Vec<LatticeVector>,
}

/// Wire form: `{"rays": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<LatticeVector>,
}

impl TryFrom<FanJson> for Fan {
    type Error = Error;

    fn try_from(raw: FanJson) -> Result<Fan> {
        Fan::new(raw.rays)
    }
}

impl From<Fan> for FanJson {
    fn from(fan: Fan) -> Self {
        FanJson { rays: fan.rays }
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// What a minimal fan is, up to lattice isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Recognized {
    Projective2,
    Hirzebruch(u64),
    Other(usize),
}

/// One contraction performed by [`Fan::minimal_model`].
///
/// `cone` indexes the fan *after* the contraction: blowing that fan up at
/// `cone` restores the fan before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlowDownStep {
    pub ray: LatticeVector,
    pub cone: usize,
}

impl Fan {
    /// Validates and canonicalizes a list of ray generators given in any order.
    pub fn new(raw_rays: impl IntoIterator<Item = LatticeVector>) -> Result<Fan> {
        let mut rays: Vec<LatticeVector> = raw_rays.into_iter().collect();
        if let Some(bad) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::NonPrimitiveRay(*bad));
        }
        rays.sort_by(|a, b| a.angle_cmp(*b).then_with(|| a.cmp(b)));
        // Distinct primitive vectors never share a direction, so after sorting
        // by angle any duplicate is adjacent.
        if let Some(w) = rays.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRay(w[0]));
        }
        if rays.len() < 3 {
            return Err(Error::NotComplete(format!(
                "a complete fan needs at least 3 rays, got {}",
                rays.len()
            )));
        }
        let d = rays.len();
        for i in 0..d {
            let (a, b) = (rays[i], rays[(i + 1) % d]);
            let det = a.det(b);
            if det <= 0 {
                return Err(Error::NotComplete(format!(
                    "det({a}, {b}) = {det}: the cone between them is not strictly convex"
                )));
            }
            if det >= 2 {
                return Err(Error::NotSmooth(format!(
                    "det({a}, {b}) = {det}: cone is not unimodular"
                )));
            }
        }
        Ok(Fan { rays })
    }

    pub fn projective_plane() -> Fan {
        Fan::new([(1, 0), (0, 1), (-1, -1)].map(LatticeVector::from)).unwrap()
    }

    /// The Hirzebruch surface F_a with rays e1, e2, -e1 + a e2, -e2.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new([(1, 0), (0, 1), (-1, a), (0, -1)].map(LatticeVector::from))
            .expect("Hirzebruch fans are smooth and complete")
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Number of rays, #Δ(1).
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Ray with cyclic indexing.
    pub fn ray(&self, i: isize) -> LatticeVector {
        self.rays[i.rem_euclid(self.rays.len() as isize) as usize]
    }

    /// Self-intersection numbers a_i, defined by v_{i-1} + v_{i+1} = -a_i v_i.
    pub fn self_intersections(&self) -> Vec<i64> {
        (0..self.len() as isize)
            .map(|i| {
                let v = self.ray(i);
                let prev = self.ray(i - 1);
                let next = self.ray(i + 1);
                let sx = prev.x as i128 + next.x as i128;
                let sy = prev.y as i128 + next.y as i128;
                // v is primitive, so at least one coordinate is nonzero.
                let k = if v.x != 0 {
                    sx / v.x as i128
                } else {
                    sy / v.y as i128
                };
                assert!(
                    sx == k * v.x as i128 && sy == k * v.y as i128,
                    "neighbors of {v} do not sum to a multiple of it; fan validation is broken"
                );
                i64::try_from(-k).expect("self-intersection fits in i64")
            })
            .collect()
    }

    pub fn apply_map(&self, map: &UnimodularMap) -> Result<Fan> {
        let image = self
            .rays
            .iter()
            .map(|&r| map.apply(r))
            .collect::<Result<Vec<_>>>()?;
        Fan::new(image)
    }

    /// Lattice isomorphism test.
    ///
    /// Candidate alignments are filtered by the cyclic self-intersection
    /// sequence, and each surviving alignment is confirmed by constructing
    /// the lattice map it induces on a pair of adjacent rays and checking that
    /// it carries every ray of `self` onto a ray of `other`.
    pub fn is_isomorphic(&self, other: &Fan) -> bool {
        let d = self.len();
        if d != other.len() {
            return false;
        }
        let a = self.self_intersections();
        let b = other.self_intersections();
        for shift in 0..d {
            for reversed in [false, true] {
                let idx = |i: usize| -> usize {
                    if reversed {
                        (shift + d - i % d) % d
                    } else {
                        (shift + i) % d
                    }
                };
                if (0..d).any(|i| a[i] != b[idx(i)]) {
                    continue;
                }
                let from = (self.rays[0], self.rays[1]);
                let to = (other.rays[idx(0)], other.rays[idx(1)]);
                let Some(map) = UnimodularMap::between_bases(from, to) else {
                    continue;
                };
                let matches = (0..d).all(|i| {
                    map.apply(self.rays[i])
                        .map(|img| img == other.rays[idx(i)])
                        .unwrap_or(false)
                });
                if matches {
                    return true;
                }
            }
        }
        false
    }

    pub fn recognize(&self) -> Recognized {
        match self.len() {
            3 => Recognized::Projective2,
            4 => Recognized::Hirzebruch(
                self.self_intersections()
                    .iter()
                    .map(|a| a.unsigned_abs())
                    .max()
                    .unwrap_or(0),
            ),
            d => Recognized::Other(d),
        }
    }

    /// Inserts v_i + v_{i+1} into the cone between rays i and i+1.
    pub fn blow_up(&self, cone: usize) -> Result<Fan> {
        self.blow_up_with_index(cone).map(|(fan, _)| fan)
    }

    /// Like [`Fan::blow_up`], also returning the index of the new ray in the
    /// canonical order of the result.
    pub fn blow_up_with_index(&self, cone: usize) -> Result<(Fan, usize)> {
        let d = self.len();
        if cone >= d {
            return Err(Error::IndexOutOfRange {
                index: cone,
                len: d,
            });
        }
        let new_ray = self.rays[cone].checked_add(self.rays[(cone + 1) % d])?;
        let mut rays = self.rays.clone();
        rays.insert(cone + 1, new_ray);
        let fan = Fan::new(rays)?;
        let index = fan.position(new_ray).expect("inserted ray is present");
        Ok((fan, index))
    }

    /// Removes a ray with self-intersection -1.
    pub fn blow_down(&self, index: usize) -> Result<Fan> {
        let d = self.len();
        if index >= d {
            return Err(Error::IndexOutOfRange { index, len: d });
        }
        if d <= 3 {
            return Err(Error::TooFewRays(d));
        }
        let a = self.self_intersections()[index];
        if a != -1 {
            return Err(Error::NotExceptional {
                index,
                self_intersection: a,
            });
        }
        let mut rays = self.rays.clone();
        rays.remove(index);
        Fan::new(rays)
    }

    /// Contracts the lowest-index (-1)-ray until none is left.
    pub fn minimal_model(&self) -> (Fan, Vec<BlowDownStep>) {
        let mut fan = self.clone();
        let mut steps = Vec::new();
        while let Some(index) = fan.self_intersections().iter().position(|&a| a == -1) {
            if fan.len() <= 3 {
                break;
            }
            let ray = fan.rays[index];
            let smaller = fan.blow_down(index).expect("(-1)-ray on a fan with d >= 4");
            let cone = smaller
                .cone_containing(ray)
                .expect("contracted ray lies inside a cone of the smaller fan");
            steps.push(BlowDownStep { ray, cone });
            fan = smaller;
        }
        assert!(
            fan.len() <= 4,
            "a smooth complete fan with {} rays and no (-1)-ray: validation is broken",
            fan.len()
        );
        (fan, steps)
    }

    pub fn position(&self, ray: LatticeVector) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }

    /// Index i of the 2-cone cone(v_i, v_{i+1}) whose generators sum to `ray`.
    fn cone_containing(&self, ray: LatticeVector) -> Option<usize> {
        let d = self.len();
        (0..d).find(|&i| {
            self.rays[i]
                .checked_add(self.rays[(i + 1) % d])
                .map(|s| s == ray)
                .unwrap_or(false)
        })
    }
}
