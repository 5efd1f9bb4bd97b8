//! Z2-cohomology of polygon spaces for `d >= 3`.
//!
//! Betti numbers come from counting short and median subsets that contain the
//! longest side. The ring is an exterior-type algebra on generators `Z_1..Z_n`
//! in degree `d - 1` modulo a monomial ideal read off from long subsets.

mod betti;
mod ring;
mod verdict;

use std::collections::BTreeMap;

use serde::Serialize;

pub use betti::{
    betti_table, counting_identity_holds, euler_characteristic, poincare_polynomial,
    short_median_counts, BettiTable, Polynomial, ShortMedianCounts,
};
pub use ring::{
    quotient_basis_dimensions, ring_presentation, rings_isomorphic_bruteforce, RingPresentation,
    MAX_BIJECTION_VARS,
};
pub use verdict::{classify_pair, recognize_special, PairVerdict, SpecialType};

use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetMask};

pub(crate) fn require_dimension(d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// Betti table and ring presentation bundled for output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub d: u32,
    pub manifold_dim: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub betti: BTreeMap<usize, u64>,
    pub euler: i64,
    pub ring: RingSummary,
    pub generic: bool,
    pub special: Option<SpecialType>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSummary {
    pub pruned: Vec<usize>,
    pub generators: Vec<SubsetMask>,
}

pub fn cohomology_report(l: &LengthVector, d: u32) -> Result<CohomologyReport> {
    let table = betti_table(l, d)?;
    let ring = ring_presentation(l, d)?;
    let mut notes = Vec::new();
    if !table.generic {
        notes.push("nongeneric: E_d(l) may be singular".to_string());
    }
    if ring.is_zero_ring() {
        notes.push(format!("{{{}}} is long: E_d(l) is empty", l.n()));
    }
    Ok(CohomologyReport {
        n: table.n,
        d,
        manifold_dim: table.manifold_dim,
        euler: table.euler_characteristic(),
        special: recognize_special(l),
        a: table.a,
        b: table.b,
        betti: table.dims,
        ring: RingSummary {
            pruned: ring.pruned,
            generators: ring.minimal_generators,
        },
        generic: table.generic,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let l = LengthVector::from_integers(&[1, 2, 2, 2, 4, 4]).unwrap();
        let r = cohomology_report(&l, 3).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["manifold_dim"], 9);
        assert_eq!(json["betti"]["4"], 7);
        assert_eq!(json["euler"], 0);
        assert_eq!(json["ring"]["pruned"], serde_json::json!([5]));
        assert_eq!(
            json["ring"]["generators"],
            serde_json::json!([[2, 3], [2, 4], [3, 4], [5]])
        );
        assert_eq!(json["special"], serde_json::Value::Null);
    }

    #[test]
    fn report_notes() {
        let r = cohomology_report(&LengthVector::from_integers(&[1, 1, 3]).unwrap(), 3).unwrap();
        assert_eq!(r.notes, vec!["{3} is long: E_d(l) is empty"]);
        let r = cohomology_report(&LengthVector::from_integers(&[1, 1, 2]).unwrap(), 3).unwrap();
        assert!(r.notes[0].starts_with("nongeneric"));
    }
}
