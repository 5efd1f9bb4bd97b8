use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of `{1, ..., n}` stored as a bitmask; index `i` lives in bit `i - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a mask from 1-based indices.
    ///
    /// Panics if an index is 0 or above 64.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!((1..=64).contains(&i), "subset index {i} out of range");
            bits |= 1 << (i - 1);
        }
        SubsetMask(bits)
    }

    /// `{1, ..., n}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        SubsetMask(1 << (i - 1))
    }

    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 64 && self.0 & (1 << (i - 1)) != 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << (i - 1)))
    }

    pub const fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << (i - 1)))
    }

    /// Complement inside `{1, ..., n}`.
    pub const fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every index lies in `{1, ..., n}`.
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset_of(Self::full(n))
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn min_index(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Ascending 1-based indices.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending index lists, so `{1,4,6} < {2,3,6}`.
    pub fn lex_cmp(self, other: SubsetMask) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Dominance order: `self` is obtained from `other` by deleting elements and
    /// lowering indices. Holds iff `|self| <= |other|` and the i-th largest element
    /// of `self` is at most the i-th largest element of `other`.
    pub fn dominated_by(self, other: SubsetMask) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut mine: Vec<usize> = self.indices();
        let mut theirs: Vec<usize> = other.indices();
        mine.reverse();
        theirs.reverse();
        mine.iter().zip(&theirs).all(|(a, b)| a <= b)
    }

    /// Immediate predecessors in the dominance order: drop one element, or lower
    /// one element by one into a free slot.
    pub fn lower_covers(self) -> impl Iterator<Item = SubsetMask> {
        self.iter().flat_map(move |i| {
            let dropped = Some(self.without(i));
            let lowered = (i > 1 && !self.contains(i - 1)).then(|| self.without(i).with(i - 1));
            dropped.into_iter().chain(lowered)
        })
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Indices {}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_indices() {
        let j = SubsetMask::from_indices([6, 1, 4]);
        assert_eq!(j.indices(), vec![1, 4, 6]);
        assert_eq!(j.to_string(), "{1,4,6}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
        assert_eq!(j.max_index(), Some(6));
        assert_eq!(j.min_index(), Some(1));
    }

    #[test]
    fn complement_is_an_involution() {
        for bits in 0..64u64 {
            let j = SubsetMask::from_bits(bits);
            assert_eq!(j.complement(6).complement(6), j);
            assert_eq!(j.len() + j.complement(6).len(), 6);
        }
    }

    #[test]
    fn lexicographic_order_is_on_index_lists() {
        let a = SubsetMask::from_indices([1, 4, 6]);
        let b = SubsetMask::from_indices([2, 3, 6]);
        assert!(a > b, "numeric order differs");
        assert_eq!(a.lex_cmp(b), Ordering::Less);
    }

    #[test]
    fn dominance() {
        let s = |v: &[usize]| SubsetMask::from_indices(v.iter().copied());
        assert!(s(&[1, 2]).dominated_by(s(&[1, 3])));
        assert!(s(&[2]).dominated_by(s(&[1, 3])));
        assert!(!s(&[1, 4]).dominated_by(s(&[2, 3])));
        assert!(!s(&[2, 3]).dominated_by(s(&[1, 4])));
        assert!(SubsetMask::EMPTY.dominated_by(s(&[1])));
        assert!(!s(&[1, 2]).dominated_by(s(&[5])));
    }

    #[test]
    fn lower_covers_are_dominated() {
        for bits in 1..128u64 {
            let j = SubsetMask::from_bits(bits);
            for c in j.lower_covers() {
                assert!(c.dominated_by(j) && c != j);
            }
        }
        let covers: Vec<_> = SubsetMask::from_indices([2, 3]).lower_covers().collect();
        assert_eq!(
            covers,
            vec![
                SubsetMask::from_indices([3]),
                SubsetMask::from_indices([1, 3]),
                SubsetMask::from_indices([2]),
            ]
        );
    }
}
