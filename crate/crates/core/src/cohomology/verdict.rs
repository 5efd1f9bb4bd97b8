use std::fmt;

use serde::Serialize;

use super::{betti_table, require_dimension};
use crate::chambers::{chamber_signature, same_chamber_up_to_permutation};
use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetKind, SubsetMask};

/// Diffeomorphism verdict for `E_d(l)` and `E_d(l')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub diffeomorphic: bool,
    pub betti_equal: bool,
    /// Smallest subset (sorted indices, containing `n`) that is short for
    /// exactly one of the two sorted vectors.
    pub witness: Option<SubsetMask>,
    pub notes: Vec<String>,
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.diffeomorphic {
            "diffeomorphic"
        } else {
            "NOT diffeomorphic"
        })?;
        f.write_str(if self.betti_equal {
            "; Betti numbers identical"
        } else {
            "; Betti numbers differ"
        })?;
        if let Some(w) = self.witness {
            write!(f, "; witness subset {w}")?;
        }
        Ok(())
    }
}

/// Both vectors are sorted first, so the verdict is up to relabelling sides.
pub fn classify_pair(l: &LengthVector, l2: &LengthVector, d: u32) -> Result<PairVerdict> {
    require_dimension(d)?;
    if l.n() != l2.n() {
        return Err(Error::DimensionMismatch {
            left: l.n(),
            right: l2.n(),
        });
    }
    let cmp = same_chamber_up_to_permutation(l, l2)?;
    let (s1, s2) = (l.sorted().0, l2.sorted().0);
    let betti_equal = betti_table(&s1, d)?.dims == betti_table(&s2, d)?.dims;
    let mut notes = Vec::new();
    if let Some(w) = cmp.witness {
        let describe = |k: SubsetKind| match k {
            SubsetKind::Short => "short",
            _ => "long",
        };
        notes.push(format!(
            "{w} is {} for the first vector and {} for the second",
            describe(s1.kind(w)),
            describe(s2.kind(w)),
        ));
    }
    if s1.is_empty_space() != s2.is_empty_space() {
        notes.push("exactly one of the two spaces is empty".to_string());
    }
    if !cmp.same && betti_equal {
        notes.push("Betti numbers agree but the chambers differ".to_string());
    }
    Ok(PairVerdict {
        diffeomorphic: cmp.same,
        betti_equal,
        witness: cmp.witness,
        notes,
    })
}

/// Chambers whose polygon space has a closed-form diffeomorphism type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialType {
    /// `V_2(R^d) × (S^{d-1})^{n-3}`.
    StiefelTimesSpheres,
    /// `S^{(d-1)(n-2)-1} × S^{d-1}`.
    SphereProduct,
}

impl fmt::Display for SpecialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecialType::StiefelTimesSpheres => "stiefel_times_spheres",
            SpecialType::SphereProduct => "sphere_product",
        })
    }
}

/// Recognizes the two closed-form chambers. The vector is sorted first; the
/// answer does not depend on `d`. Nongeneric and empty spaces give `None`.
pub fn recognize_special(l: &LengthVector) -> Option<SpecialType> {
    let l = l.sorted().0;
    if !l.is_generic() || l.is_empty_space() {
        return None;
    }
    let n = l.n();
    if l.kind(SubsetMask::from_indices([n - 2, n - 1])) == SubsetKind::Long {
        return Some(SpecialType::StiefelTimesSpheres);
    }
    let top = SubsetMask::singleton(n);
    if n >= 4 && chamber_signature(&l).ok()?.family() == [SubsetMask::EMPTY] {
        debug_assert_eq!(l.kind(top), SubsetKind::Short);
        return Some(SpecialType::SphereProduct);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lengths::parse_length_vector;

    fn lv(v: &[i64]) -> LengthVector {
        LengthVector::from_integers(v).unwrap()
    }

    #[test]
    fn betti_twins_pair() {
        let v = classify_pair(&lv(&[1, 2, 2, 2, 4, 4]), &lv(&[1, 1, 3, 4, 8, 8]), 3).unwrap();
        assert!(!v.diffeomorphic);
        assert!(v.betti_equal);
        assert_eq!(v.witness, Some(SubsetMask::from_indices([1, 4, 6])));
        assert_eq!(
            v.to_string(),
            "NOT diffeomorphic; Betti numbers identical; witness subset {1,4,6}"
        );
        assert!(v.notes[0].contains("short for the first vector and long for the second"));
    }

    #[test]
    fn permutations_are_diffeomorphic() {
        let v = classify_pair(&lv(&[1, 2, 2, 2, 4, 4]), &lv(&[4, 2, 1, 4, 2, 2]), 4).unwrap();
        assert!(v.diffeomorphic && v.betti_equal);
        assert_eq!(v.witness, None);
        assert_eq!(v.to_string(), "diffeomorphic; Betti numbers identical");
    }

    #[test]
    fn empty_versus_nonempty() {
        let v = classify_pair(&lv(&[1, 1, 1]), &lv(&[1, 1, 3]), 3).unwrap();
        assert!(!v.diffeomorphic && !v.betti_equal);
        assert_eq!(v.witness, Some(SubsetMask::singleton(3)));
    }

    #[test]
    fn pair_errors() {
        assert_eq!(
            classify_pair(&lv(&[1, 1, 1]), &lv(&[1, 1, 1, 1]), 3),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        );
        assert!(matches!(
            classify_pair(&lv(&[1, 1, 2]), &lv(&[1, 1, 1]), 3),
            Err(Error::NotGeneric { .. })
        ));
        assert_eq!(
            classify_pair(&lv(&[1, 1, 1]), &lv(&[1, 1, 1]), 2),
            Err(Error::UnsupportedDimension(2))
        );
    }

    #[test]
    fn special_types() {
        assert_eq!(
            recognize_special(&lv(&[1, 1, 1])),
            Some(SpecialType::StiefelTimesSpheres)
        );
        let ex1 = parse_length_vector("3/20,3/20,3/20,3/20,2/5").unwrap();
        assert_eq!(recognize_special(&ex1), Some(SpecialType::SphereProduct));
        assert_eq!(recognize_special(&lv(&[1, 2, 2, 2, 4, 4])), None);
        assert_eq!(recognize_special(&lv(&[1, 1, 3])), None);
        assert_eq!(SpecialType::SphereProduct.to_string(), "sphere_product");
    }

    #[test]
    fn stiefel_chamber_has_codimension_one_class() {
        // {n-2, n-1} long forces dims[d-2] = 1.
        for v in [&[1, 1, 1][..], &[1, 2, 5, 5], &[1, 2, 4, 9, 9]] {
            let l = lv(v);
            assert_eq!(
                recognize_special(&l),
                Some(SpecialType::StiefelTimesSpheres),
                "{v:?}"
            );
            for d in 3..6 {
                assert_eq!(betti_table(&l, d).unwrap().dim(d as usize - 2), 1);
            }
        }
    }
}
