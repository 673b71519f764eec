//! Exact arithmetic in the rank-2 lattices N (ray generators) and M (characters).

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer pair, read either in N (basis e1, e2) or in the dual lattice M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl From<[i64; 2]> for LatticeVector {
    fn from([x, y]: [i64; 2]) -> Self {
        LatticeVector { x, y }
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.x, v.y]
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVector { x, y }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// gcd(|x|, |y|) = 1.
    pub fn is_primitive(self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    /// Rotation by a quarter turn, (x, y) -> (-y, x).
    ///
    /// For a primitive ray v this is the primitive generator of v^⊥ ∩ M.
    pub fn rot90(self) -> LatticeVector {
        LatticeVector::new(-self.y, self.x)
    }

    pub fn checked_add(self, other: LatticeVector) -> Result<LatticeVector> {
        match (self.x.checked_add(other.x), self.y.checked_add(other.y)) {
            (Some(x), Some(y)) => Ok(LatticeVector::new(x, y)),
            _ => Err(Error::Overflow(format!("{self} + {other}"))),
        }
    }

    pub fn checked_scale(self, k: i64) -> Result<LatticeVector> {
        match (self.x.checked_mul(k), self.y.checked_mul(k)) {
            (Some(x), Some(y)) => Ok(LatticeVector::new(x, y)),
            _ => Err(Error::Overflow(format!("{k} * {self}"))),
        }
    }

    /// det(self, other) = x1*y2 - y1*x2, computed without overflow.
    pub fn det(self, other: LatticeVector) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// The pairing ⟨u, v⟩ between M and N.
    pub fn dot(self, other: LatticeVector) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Index of the half-open quadrant containing the direction, counted
    /// counterclockwise from the positive x-axis: [0, π/2) is 0, and so on.
    pub fn quadrant(self) -> u8 {
        debug_assert!(!self.is_zero());
        match (self.x.signum(), self.y.signum()) {
            (1, 0) | (1, 1) => 0,
            (0, 1) | (-1, 1) => 1,
            (-1, 0) | (-1, -1) => 2,
            _ => 3,
        }
    }

    /// Exact comparison of polar angles in [0, 2π). Parallel vectors with the
    /// same direction compare equal.
    pub fn angle_cmp(self, other: LatticeVector) -> Ordering {
        self.quadrant()
            .cmp(&other.quadrant())
            .then_with(|| 0.cmp(&self.det(other)))
    }
}

/// A 2×2 integer matrix with determinant ±1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodularMap {
    rows: [[i64; 2]; 2],
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap {
        rows: [[1, 0], [0, 1]],
    };

    pub fn new(rows: [[i64; 2]; 2]) -> Result<Self> {
        let det = rows[0][0] as i128 * rows[1][1] as i128 - rows[0][1] as i128 * rows[1][0] as i128;
        if det == 1 || det == -1 {
            Ok(UnimodularMap { rows })
        } else {
            Err(Error::NotUnimodular(
                det.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
            ))
        }
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.rows
    }

    pub fn det(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    pub fn apply(&self, v: LatticeVector) -> Result<LatticeVector> {
        let [[a, b], [c, d]] = self.rows;
        let x = a as i128 * v.x as i128 + b as i128 * v.y as i128;
        let y = c as i128 * v.x as i128 + d as i128 * v.y as i128;
        match (i64::try_from(x), i64::try_from(y)) {
            (Ok(x), Ok(y)) => Ok(LatticeVector::new(x, y)),
            _ => Err(Error::Overflow(format!("image of {v}"))),
        }
    }

    /// The unique map sending the basis (f0, f1) to (g0, g1), if it is integral.
    /// Both pairs must be lattice bases.
    pub fn between_bases(
        from: (LatticeVector, LatticeVector),
        to: (LatticeVector, LatticeVector),
    ) -> Option<UnimodularMap> {
        let det = from.0.det(from.1);
        if det != 1 && det != -1 {
            return None;
        }
        // Inverse of the matrix with columns from.0, from.1.
        let inv = [
            [from.1.y as i128 * det, -(from.1.x as i128) * det],
            [-(from.0.y as i128) * det, from.0.x as i128 * det],
        ];
        let cols = [
            [to.0.x as i128, to.1.x as i128],
            [to.0.y as i128, to.1.y as i128],
        ];
        let mut rows = [[0i64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let entry = cols[r][0] * inv[0][c] + cols[r][1] * inv[1][c];
                rows[r][c] = i64::try_from(entry).ok()?;
            }
        }
        UnimodularMap::new(rows).ok()
    }
}
