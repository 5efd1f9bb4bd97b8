//! Chambers of the wall arrangement `sum_{J} l = sum_{not J} l` and their
//! combinatorial invariants.
//!
//! For an ordered generic vector the chamber is determined by which subsets
//! containing `n` are short. A [`ChamberSignature`] records the family of
//! `J ⊆ {1, ..., n-1}` with `J ∪ {n}` short; it is closed downward under
//! inclusion and under lowering indices (the dominance order), because
//! lowering an index never increases a sum when the entries are sorted.

mod census;
mod realize;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetKind, SubsetMask};

pub use census::{enumerate_chambers, CensusEntry, CensusResult, MAX_CENSUS_N};
pub use realize::realize_signature;

/// Canonical chamber invariant of an ordered generic length vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChamberSignature {
    n: usize,
    /// Members sorted by mask value.
    family: Vec<SubsetMask>,
}

impl ChamberSignature {
    /// Builds a signature from candidate members, checking both closure
    /// properties.
    pub fn from_family<I: IntoIterator<Item = SubsetMask>>(n: usize, members: I) -> Result<Self> {
        if !(2..=crate::lengths::MAX_ENTRIES).contains(&n) {
            return Err(Error::MalformedCandidate(format!("n = {n} out of range")));
        }
        let mut family: Vec<SubsetMask> = members.into_iter().collect();
        family.sort();
        family.dedup();
        let sig = ChamberSignature { n, family };
        sig.validate()?;
        Ok(sig)
    }

    fn validate(&self) -> Result<()> {
        for &j in &self.family {
            if !j.fits(self.n - 1) {
                return Err(Error::MalformedCandidate(format!(
                    "member {j} is not a subset of {{1..{}}}",
                    self.n - 1
                )));
            }
            if let Some(c) = j.lower_covers().find(|&c| !self.contains(c)) {
                return Err(Error::MalformedCandidate(format!(
                    "member {j} present but {c} missing"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[SubsetMask] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    /// An empty family means `{n}` is long, i.e. the polygon space is empty.
    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn contains(&self, j: SubsetMask) -> bool {
        self.family.binary_search(&j).is_ok()
    }

    /// Whether `k ∪ {n}` is short, for `k ⊆ {1, ..., n-1}`.
    pub fn is_short_with_last(&self, k: SubsetMask) -> bool {
        self.contains(k)
    }

    /// Members not dominated by another member.
    pub fn maximal_members(&self) -> Vec<SubsetMask> {
        maximal_in(&self.family)
    }

    /// Non-members of `{1..n-1}` not dominating another non-member.
    pub fn minimal_non_members(&self) -> Vec<SubsetMask> {
        let non: Vec<SubsetMask> = (0..1u64 << (self.n - 1))
            .map(SubsetMask::from_bits)
            .filter(|&j| !self.contains(j))
            .collect();
        minimal_in(&non)
    }

    /// `[n, mask_0, mask_1, ...]` with masks as big-endian `u64`.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 8 * self.family.len());
        out.push(self.n as u8);
        for j in &self.family {
            out.extend_from_slice(&j.bits().to_be_bytes());
        }
        out
    }
}

pub(crate) fn maximal_in(set: &[SubsetMask]) -> Vec<SubsetMask> {
    set.iter()
        .copied()
        .filter(|&a| !set.iter().any(|&b| b != a && a.dominated_by(b)))
        .collect()
}

pub(crate) fn minimal_in(set: &[SubsetMask]) -> Vec<SubsetMask> {
    set.iter()
        .copied()
        .filter(|&a| !set.iter().any(|&b| b != a && b.dominated_by(a)))
        .collect()
}

impl fmt::Display for ChamberSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, j) in self.family.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("]")
    }
}

/// Serialized as the list of members, each a sorted index list.
impl Serialize for ChamberSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.family)
    }
}

/// `J ⊆ {1..n-1}` with `J ∪ {n}` short, for an ordered generic vector.
pub fn chamber_signature(l: &LengthVector) -> Result<ChamberSignature> {
    l.require_ordered()?;
    l.require_generic()?;
    let n = l.n();
    let top = SubsetMask::singleton(n);
    let family = (0..1u64 << (n - 1))
        .map(SubsetMask::from_bits)
        .filter(|&j| l.kind(j.union(top)) == SubsetKind::Short);
    ChamberSignature::from_family(n, family)
}

/// Outcome of a chamber comparison. When the vectors differ, `witness` is the
/// lexicographically smallest subset containing `n` that is short for exactly
/// one of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberComparison {
    pub same: bool,
    pub witness: Option<SubsetMask>,
}

fn check_same_n(a: &LengthVector, b: &LengthVector) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

pub fn same_chamber(a: &LengthVector, b: &LengthVector) -> Result<ChamberComparison> {
    check_same_n(a, b)?;
    let sa = chamber_signature(a)?;
    let sb = chamber_signature(b)?;
    if sa == sb {
        return Ok(ChamberComparison {
            same: true,
            witness: None,
        });
    }
    let top = SubsetMask::singleton(a.n());
    let witness = (0..1u64 << (a.n() - 1))
        .map(SubsetMask::from_bits)
        .filter(|&j| sa.contains(j) != sb.contains(j))
        .map(|j| j.union(top))
        .min_by(|x, y| x.lex_cmp(*y));
    Ok(ChamberComparison {
        same: false,
        witness,
    })
}

/// Sorts both vectors and compares their chambers. Any permutation carrying
/// one chamber onto another is realized by sorting, so this decides whether
/// `a` and `σ(b)` share a chamber for some `σ`. The witness refers to the
/// sorted indices.
pub fn same_chamber_up_to_permutation(
    a: &LengthVector,
    b: &LengthVector,
) -> Result<ChamberComparison> {
    check_same_n(a, b)?;
    a.require_generic()?;
    b.require_generic()?;
    same_chamber(&a.sorted().0, &b.sorted().0)
}

/// Three-valued classification of every subset containing `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StratumSignature {
    n: usize,
    /// Indexed by the mask of `J \ {n}`.
    kinds: Vec<SubsetKind>,
}

impl StratumSignature {
    pub fn of(l: &LengthVector) -> Result<Self> {
        l.require_ordered()?;
        Ok(StratumSignature {
            n: l.n(),
            kinds: l.subsets_containing_last().map(|j| l.kind(j)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self, j: SubsetMask) -> SubsetKind {
        let top = SubsetMask::singleton(self.n);
        self.kinds[j.bits() as usize & !(top.bits() as usize)]
    }

    pub fn has_median(&self) -> bool {
        self.kinds.contains(&SubsetKind::Median)
    }

    /// The chamber signature, when no subset is median.
    pub fn to_chamber(&self) -> Option<ChamberSignature> {
        if self.has_median() {
            return None;
        }
        let family = self
            .kinds
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == SubsetKind::Short)
            .map(|(m, _)| SubsetMask::from_bits(m as u64));
        Some(ChamberSignature::from_family(self.n, family).expect("short families are closed"))
    }
}

pub fn same_stratum(a: &LengthVector, b: &LengthVector) -> Result<bool> {
    check_same_n(a, b)?;
    Ok(StratumSignature::of(a)? == StratumSignature::of(b)?)
}

impl PartialOrd for ChamberSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by [`ChamberSignature::canonical_bytes`].
impl Ord for ChamberSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_bytes().cmp(&other.canonical_bytes())
    }
}
