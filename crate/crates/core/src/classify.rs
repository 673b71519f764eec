//! Surface types, the predicted classification, and the end-to-end check.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::{Fan, Recognized};
use crate::gluing::build_real_complex;
use crate::homology::{euler_from_cells, homology, HomologyProfile};

/// A closed connected surface up to homeomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    OrientableGenus(u64),
    /// Connect sum of k ≥ 1 real projective planes.
    NonorientableGenus(u64),
}

impl SurfaceType {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            SurfaceType::OrientableGenus(g) => 2 - 2 * g as i64,
            SurfaceType::NonorientableGenus(k) => 2 - k as i64,
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, SurfaceType::OrientableGenus(_))
    }

    /// Name used in JSON reports: every nonorientable surface is written as a
    /// connect sum, e.g. "connect sum of 1 copies of RP2".
    pub fn report_name(self) -> String {
        match self {
            SurfaceType::NonorientableGenus(k) => format!("connect sum of {k} copies of RP2"),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurfaceType::OrientableGenus(0) => write!(f, "sphere S²"),
            SurfaceType::OrientableGenus(1) => write!(f, "torus S¹×S¹"),
            SurfaceType::OrientableGenus(g) => write!(f, "connect sum of {g} tori"),
            SurfaceType::NonorientableGenus(1) => write!(f, "RP²"),
            SurfaceType::NonorientableGenus(2) => write!(f, "Klein bottle"),
            SurfaceType::NonorientableGenus(k) => write!(f, "connect sum of {k} copies of RP²"),
        }
    }
}

impl Serialize for SurfaceType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.report_name())
    }
}

/// Reads the surface type off a homology profile. Anything that is not the
/// profile of a closed connected surface is rejected.
pub fn classify_surface(h: &HomologyProfile) -> Result<SurfaceType> {
    let reject = |why: &str| Err(Error::NotAClosedSurfaceProfile(format!("{why}: {h:?}")));
    if h.b0 != 1 {
        return reject("not connected");
    }
    let chi = h.euler_characteristic();
    let two_torsion = h.torsion.len() == 1 && h.torsion[0] == 2.into();
    match (h.b2, h.torsion.is_empty(), two_torsion) {
        (1, true, _) => {
            if chi > 2 || chi % 2 != 0 {
                return reject("orientable profile with impossible Euler characteristic");
            }
            Ok(SurfaceType::OrientableGenus(((2 - chi) / 2) as u64))
        }
        (0, _, true) => {
            if chi > 1 {
                return reject("nonorientable profile with impossible Euler characteristic");
            }
            Ok(SurfaceType::NonorientableGenus((2 - chi) as u64))
        }
        _ => reject("unexpected top homology or torsion"),
    }
}

/// χ = 4·#Δ(0) − 2·#Δ(1) + #Δ(2), with one zero cone and d two-cones.
pub fn euler_formula(fan: &Fan) -> i64 {
    let d = fan.len() as i64;
    4 - 2 * d + d
}

/// Torus for even Hirzebruch surfaces, otherwise the connect sum of
/// d − 2 real projective planes.
pub fn predict_theorem(fan: &Fan) -> SurfaceType {
    match fan.recognize() {
        Recognized::Hirzebruch(a) if a % 2 == 0 => SurfaceType::OrientableGenus(1),
        _ => SurfaceType::NonorientableGenus(fan.len() as u64 - 2),
    }
}

/// Orientable iff every self-intersection number is even.
pub fn orientable_fast(fan: &Fan) -> bool {
    fan.self_intersections().iter().all(|a| a % 2 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub fan: Fan,
    pub d: usize,
    pub predicted: SurfaceType,
    pub computed: SurfaceType,
    pub chi_cells: i64,
    pub chi_formula: i64,
    pub orientable_fast: bool,
    pub orientable_homology: bool,
    pub betti: [usize; 3],
    #[serde(serialize_with = "crate::homology::serialize_torsion")]
    pub torsion: Vec<num_bigint::BigInt>,
    pub cells: [usize; 3],
    pub all_consistent: bool,
}

/// Builds the glued complex, computes its homology and classifies it, then
/// compares every derived quantity with the fan-only predictions.
pub fn verify(fan: &Fan) -> Result<VerificationReport> {
    let complex = build_real_complex(fan);
    let profile = homology(&complex)?;
    let computed = classify_surface(&profile)?;
    let predicted = predict_theorem(fan);
    let d = fan.len();
    let chi_cells = euler_from_cells(&complex);
    let chi_formula = euler_formula(fan);
    let fast = orientable_fast(fan);
    let orientable_homology = profile.b2 == 1 && profile.torsion.iter().all(|t| t.is_one());
    let (nv, ne, nf) = complex.counts();
    let all_consistent = predicted == computed
        && chi_cells == chi_formula
        && chi_cells == 4 - d as i64
        && chi_cells == computed.euler_characteristic()
        && fast == orientable_homology
        && orientable_homology == computed.is_orientable()
        && (nv, ne, nf) == (d, 2 * d, 4);
    Ok(VerificationReport {
        fan: fan.clone(),
        d,
        predicted,
        computed,
        chi_cells,
        chi_formula,
        orientable_fast: fast,
        orientable_homology,
        betti: profile.betti(),
        torsion: profile.torsion,
        cells: [nv, ne, nf],
        all_consistent,
    })
}

/// Verifies each fan independently on the current rayon pool; results stay
/// in input order.
pub fn verify_all(fans: &[Fan]) -> Vec<Result<VerificationReport>> {
    fans.par_iter().map(verify).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn profile(b: [usize; 3], torsion: &[i64]) -> HomologyProfile {
        HomologyProfile {
            b0: b[0],
            b1: b[1],
            b2: b[2],
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_surface(&profile([1, 2, 1], &[])).unwrap(),
            SurfaceType::OrientableGenus(1)
        );
        assert_eq!(
            classify_surface(&profile([1, 0, 0], &[2])).unwrap(),
            SurfaceType::NonorientableGenus(1)
        );
        assert_eq!(
            classify_surface(&profile([1, 3, 0], &[2])).unwrap(),
            SurfaceType::NonorientableGenus(4)
        );
        assert_eq!(
            classify_surface(&profile([1, 0, 1], &[])).unwrap(),
            SurfaceType::OrientableGenus(0)
        );
    }

    #[test]
    fn classify_rejects() {
        for (b, t) in [
            ([2, 0, 2], vec![]),
            ([1, 1, 1], vec![]),
            ([1, 1, 0], vec![]),
            ([1, 1, 0], vec![3]),
            ([1, 1, 0], vec![2, 2]),
            ([1, 2, 1], vec![2]),
            ([1, 0, 2], vec![]),
        ] {
            assert!(
                matches!(
                    classify_surface(&profile(b, &t)),
                    Err(Error::NotAClosedSurfaceProfile(_))
                ),
                "{b:?} {t:?}"
            );
        }
    }

    #[test]
    fn display_names() {
        assert_eq!(SurfaceType::OrientableGenus(1).to_string(), "torus S¹×S¹");
        assert_eq!(SurfaceType::NonorientableGenus(1).to_string(), "RP²");
        assert_eq!(
            SurfaceType::NonorientableGenus(2).to_string(),
            "Klein bottle"
        );
        assert_eq!(
            SurfaceType::NonorientableGenus(5).to_string(),
            "connect sum of 5 copies of RP²"
        );
        assert_eq!(
            SurfaceType::NonorientableGenus(1).report_name(),
            "connect sum of 1 copies of RP2"
        );
        for g in 0..4 {
            assert_eq!(
                SurfaceType::OrientableGenus(g).euler_characteristic(),
                2 - 2 * g as i64
            );
        }
    }

    #[test]
    fn euler_formula_examples() {
        assert_eq!(euler_formula(&Fan::projective_plane()), 1);
        for a in 0..5 {
            assert_eq!(euler_formula(&Fan::hirzebruch(a)), 0);
        }
        let mut f = Fan::projective_plane();
        for i in 0..4 {
            f = f.blow_up(i).unwrap();
        }
        assert_eq!(f.len(), 7);
        assert_eq!(euler_formula(&f), -3);
    }

    #[test]
    fn predictions() {
        assert_eq!(
            predict_theorem(&Fan::hirzebruch(4)),
            SurfaceType::OrientableGenus(1)
        );
        assert_eq!(
            predict_theorem(&Fan::hirzebruch(3)),
            SurfaceType::NonorientableGenus(2)
        );
        let f = Fan::hirzebruch(0).blow_up(0).unwrap().blow_up(3).unwrap();
        assert_eq!(f.len(), 6);
        assert_eq!(predict_theorem(&f), SurfaceType::NonorientableGenus(4));
    }

    #[test]
    fn orientable_fast_examples() {
        assert!(orientable_fast(&Fan::hirzebruch(2)));
        assert!(!orientable_fast(&Fan::projective_plane()));
        assert!(!orientable_fast(&Fan::hirzebruch(2).blow_up(1).unwrap()));
    }

    #[test]
    fn verify_examples() {
        let r = verify(&Fan::projective_plane()).unwrap();
        assert!(r.all_consistent);
        assert_eq!(r.computed, SurfaceType::NonorientableGenus(1));
        let r = verify(&Fan::hirzebruch(0)).unwrap();
        assert!(r.all_consistent);
        assert_eq!(r.computed, SurfaceType::OrientableGenus(1));
        let fan = crate::random::random_fan(11, 6);
        assert!(verify(&fan).unwrap().all_consistent);
    }

    #[test]
    fn report_json_keys() {
        let r = verify(&Fan::projective_plane()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        for key in [
            "fan",
            "d",
            "predicted",
            "computed",
            "chi_cells",
            "chi_formula",
            "orientable_fast",
            "betti",
            "torsion",
            "all_consistent",
        ] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
        assert_eq!(j["computed"], "connect sum of 1 copies of RP2");
        assert_eq!(j["torsion"], serde_json::json!([2]));
        assert_eq!(
            j["fan"]["rays"],
            serde_json::json!([[1, 0], [0, 1], [-1, -1]])
        );
    }
}
