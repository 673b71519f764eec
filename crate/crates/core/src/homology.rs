//! Integral homology of a 2-dimensional cell complex.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::CellComplex;
use crate::snf::{smith_normal_form, BigMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    /// Invariant factors of the torsion subgroup of H_1.
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigInt>,
}

impl HomologyProfile {
    pub fn betti(&self) -> [usize; 3] {
        [self.b0, self.b1, self.b2]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }
}

pub(crate) fn serialize_torsion<S: serde::Serializer>(
    t: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    // Torsion of these complexes is tiny; fall back to strings only if not.
    let small: Option<Vec<i64>> = t.iter().map(|x| i64::try_from(x).ok()).collect();
    match small {
        Some(v) => v.serialize(s),
        None => t
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .serialize(s),
    }
}

pub fn homology(complex: &CellComplex) -> Result<HomologyProfile> {
    if !complex.is_chain_complex() {
        return Err(Error::InvalidComplex);
    }
    let (nv, ne, nf) = complex.counts();
    let d1 = smith_normal_form(&BigMatrix::from_rows(&complex.boundary1(), ne));
    let d2 = smith_normal_form(&BigMatrix::from_rows(&complex.boundary2(), nf));
    let (r1, r2) = (d1.rank(), d2.rank());
    Ok(HomologyProfile {
        b0: nv - r1,
        b1: ne - r1 - r2,
        b2: nf - r2,
        torsion: d2.torsion(),
    })
}

/// V − E + F.
pub fn euler_from_cells(complex: &CellComplex) -> i64 {
    complex.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::gluing::build_real_complex;

    fn profile(fan: &Fan) -> (Vec<usize>, Vec<i64>) {
        let h = homology(&build_real_complex(fan)).unwrap();
        (
            h.betti().to_vec(),
            h.torsion
                .iter()
                .map(|t| i64::try_from(t).unwrap())
                .collect(),
        )
    }

    #[test]
    fn canonical_profiles() {
        assert_eq!(profile(&Fan::hirzebruch(0)), (vec![1, 2, 1], vec![]));
        assert_eq!(profile(&Fan::projective_plane()), (vec![1, 0, 0], vec![2]));
        assert_eq!(profile(&Fan::hirzebruch(1)), (vec![1, 1, 0], vec![2]));
    }

    #[test]
    fn rejects_non_chain_complex() {
        // A face bounded by a single non-closed edge.
        let c = CellComplex::new(2, vec![(0, 1)], vec![vec![(0, 1)]]);
        assert_eq!(homology(&c), Err(Error::InvalidComplex));
    }

    #[test]
    fn euler_counts() {
        assert_eq!(
            euler_from_cells(&build_real_complex(&Fan::projective_plane())),
            1
        );
        assert_eq!(
            euler_from_cells(&build_real_complex(&Fan::hirzebruch(0))),
            0
        );
    }
}
