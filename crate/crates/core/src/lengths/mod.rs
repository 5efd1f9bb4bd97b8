//! Length vectors, subset sums and the short / median / long classification.
//!
//! Every classification is exact. Entries are kept as the rationals the caller
//! supplied and, in parallel, as the coprime positive integers obtained by
//! clearing denominators; only the sign of an excess matters for
//! classification, so scans run on the integer normal form (with an `i128`
//! fast path whenever the perimeter fits).

mod mask;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use mask::{Indices, SubsetMask};
pub use parse::{parse_length_vector, parse_rational};

/// Largest number of entries a [`LengthVector`] may hold (bitmask width).
pub const MAX_ENTRIES: usize = 63;

/// Default bound on `n` for operations that scan `2^(n-1)` subsets.
pub const DEFAULT_MAX_N: usize = 24;

/// Fails with [`Error::OutOfRange`] when `n` exceeds an enumeration cap.
pub fn check_enumeration_limit(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 3,
            max: max_n,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetKind {
    Short,
    Median,
    Long,
}

impl SubsetKind {
    fn from_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Less => SubsetKind::Short,
            Ordering::Equal => SubsetKind::Median,
            Ordering::Greater => SubsetKind::Long,
        }
    }
}

impl fmt::Display for SubsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetKind::Short => "short",
            SubsetKind::Median => "median",
            SubsetKind::Long => "long",
        })
    }
}

/// Classification of a subset together with its excess `L_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    pub kind: SubsetKind,
    pub excess: BigRational,
}

#[derive(Clone, Debug)]
enum Weights {
    Small { weights: Vec<i128>, total: i128 },
    Big,
}

/// Side lengths `(l_1, ..., l_n)` of a polygon, `n >= 3`, all positive.
#[derive(Clone, Debug)]
pub struct LengthVector {
    values: Vec<BigRational>,
    normal: Vec<BigInt>,
    total_normal: BigInt,
    weights: Weights,
}

impl PartialEq for LengthVector {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for LengthVector {}

impl LengthVector {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::TooFewEntries(values.len()));
        }
        if values.len() > MAX_ENTRIES {
            return Err(Error::TooManyEntries {
                n: values.len(),
                max: MAX_ENTRIES,
            });
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::EntryNotPositive {
                index: i + 1,
                value: v.to_string(),
            });
        }
        let lcm = values
            .iter()
            .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let scaled: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let normal: Vec<BigInt> = scaled.into_iter().map(|v| v / &gcd).collect();
        let total_normal: BigInt = normal.iter().sum();
        // 2 * total must fit comfortably in i128.
        let weights = if total_normal.bits() < 120 {
            let weights: Vec<i128> = normal.iter().map(|v| v.to_i128().unwrap()).collect();
            let total = weights.iter().sum();
            Weights::Small { weights, total }
        } else {
            Weights::Big
        };
        Ok(LengthVector {
            values,
            normal,
            total_normal,
            weights,
        })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Entries as supplied.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Coprime positive integers proportional to the entries.
    pub fn normal_form(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| v.to_f64().expect("rational converts to f64"))
            .collect()
    }

    pub fn is_ordered(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn require_ordered(&self) -> Result<()> {
        if self.is_ordered() {
            Ok(())
        } else {
            Err(Error::NotOrdered)
        }
    }

    /// Stable nondecreasing sort. `perm[i]` is the 1-based original index of
    /// the i-th sorted entry.
    pub fn sorted(&self) -> (LengthVector, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        let permuted = self.permuted(&perm);
        (permuted, perm.into_iter().map(|i| i + 1).collect())
    }

    /// Entries rearranged so the new i-th entry is the old `order[i]`-th (0-based).
    pub fn permuted(&self, order: &[usize]) -> LengthVector {
        assert_eq!(order.len(), self.n());
        LengthVector::new(order.iter().map(|&i| self.values[i].clone()).collect())
            .expect("a permutation of a valid vector is valid")
    }

    pub fn scaled(&self, c: &BigRational) -> Result<LengthVector> {
        LengthVector::new(self.values.iter().map(|v| v * c).collect())
    }

    /// The vector re-expressed by its integer normal form.
    pub fn normalized(&self) -> LengthVector {
        LengthVector::new(
            self.normal
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        )
        .expect("normal form is valid")
    }

    fn assert_fits(&self, j: SubsetMask) {
        assert!(
            j.fits(self.n()),
            "subset {j} out of range for n = {}",
            self.n()
        );
    }

    /// Fails unless every index of `j` lies in `1..=n`.
    pub fn check_subset(&self, j: SubsetMask) -> Result<()> {
        if j.fits(self.n()) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: j,
                n: self.n(),
            })
        }
    }

    /// `L_J = sum_{j in J} l_j - sum_{j not in J} l_j`, in the caller's units.
    pub fn excess(&self, j: SubsetMask) -> BigRational {
        self.assert_fits(j);
        self.values
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, v)| {
                if j.contains(i + 1) {
                    acc + v
                } else {
                    acc - v
                }
            })
    }

    /// `L_J` measured in the integer normal form.
    pub fn excess_normal(&self, j: SubsetMask) -> BigInt {
        self.assert_fits(j);
        let inside: BigInt = j.iter().map(|i| &self.normal[i - 1]).sum();
        inside * 2 - &self.total_normal
    }

    /// Sign of `L_J` without allocating on the fast path.
    pub fn excess_sign(&self, j: SubsetMask) -> Ordering {
        match &self.weights {
            Weights::Small { weights, total } => {
                let inside: i128 = j.iter().map(|i| weights[i - 1]).sum();
                (2 * inside).cmp(total)
            }
            Weights::Big => self.excess_normal(j).sign_cmp(),
        }
    }

    pub fn kind(&self, j: SubsetMask) -> SubsetKind {
        self.assert_fits(j);
        SubsetKind::from_sign(self.excess_sign(j))
    }

    pub fn classify(&self, j: SubsetMask) -> SubsetClass {
        let excess = self.excess(j);
        SubsetClass {
            kind: SubsetKind::from_sign(excess.sign_cmp()),
            excess,
        }
    }

    /// Every `J` with `n in J`, in increasing mask order (`2^(n-1)` of them).
    pub fn subsets_containing_last(&self) -> impl Iterator<Item = SubsetMask> {
        let n = self.n();
        let top = SubsetMask::singleton(n);
        (0..1u64 << (n - 1)).map(move |m| SubsetMask::from_bits(m).union(top))
    }

    /// First median subset containing `n`, if any. `J` is median iff its
    /// complement is, so this decides genericity.
    pub fn median_witness(&self) -> Option<SubsetMask> {
        self.subsets_containing_last()
            .find(|&j| self.excess_sign(j) == Ordering::Equal)
    }

    pub fn is_generic(&self) -> bool {
        self.median_witness().is_none()
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.median_witness() {
            None => Ok(()),
            Some(witness) => Err(Error::NotGeneric { witness }),
        }
    }

    /// Long subsets containing `n`, in mask order.
    pub fn long_subsets_containing_last(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.subsets_containing_last()
            .filter(move |&j| self.excess_sign(j) == Ordering::Greater)
    }

    /// `E_d(l)` is empty exactly when the largest side is long on its own.
    /// Returns that index (1-based) when so.
    pub fn empty_space_witness(&self) -> Option<usize> {
        let (imax, _) = self.values.iter().enumerate().max_by(|a, b| a.1.cmp(b.1))?;
        (self.excess_sign(SubsetMask::singleton(imax + 1)) == Ordering::Greater).then_some(imax + 1)
    }

    pub fn is_empty_space(&self) -> bool {
        self.empty_space_witness().is_some()
    }

    /// Entries formatted as exact rational strings (`"3/20"`).
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl<T: Signed + Zero + PartialOrd> SignCmp for T {
    fn sign_cmp(&self) -> Ordering {
        self.partial_cmp(&T::zero()).expect("total order")
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for LengthVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.values.iter().map(|v| v.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LengthVector {
        LengthVector::from_integers(v).unwrap()
    }

    fn s(idx: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(idx.iter().copied())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn excess_examples() {
        assert_eq!(lv(&[1, 2, 2, 2, 4, 4]).excess(s(&[1, 4, 6])), q(-1));
        assert_eq!(lv(&[1, 1, 3, 4, 8, 8]).excess(s(&[1, 4, 6])), q(1));
        let l = lv(&[3, 1, 4, 1, 5]);
        assert_eq!(l.excess(SubsetMask::full(5)), l.total());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            lv(&[1, 2, 2, 2, 4, 4]).kind(s(&[1, 4, 6])),
            SubsetKind::Short
        );
        assert_eq!(lv(&[1, 1, 2]).classify(s(&[3])).kind, SubsetKind::Median);
        assert_eq!(lv(&[1, 1, 2]).classify(s(&[3])).excess, q(0));
        assert_eq!(lv(&[5, 7, 9]).kind(SubsetMask::EMPTY), SubsetKind::Short);
    }

    #[test]
    fn genericity_examples() {
        assert!(lv(&[1, 2, 2, 2, 4, 4]).is_generic());
        assert!(lv(&[1, 1, 3, 4, 8, 8]).is_generic());
        assert_eq!(
            lv(&[1, 1, 2]).require_generic(),
            Err(Error::NotGeneric { witness: s(&[3]) })
        );
        let ex1 = parse_length_vector("3/20,3/20,3/20,3/20,2/5").unwrap();
        assert!(ex1.is_generic());
    }

    /// Genericity by scanning all `2^n` subsets with plain rational sums.
    fn generic_by_full_scan(l: &LengthVector) -> bool {
        let n = l.n();
        (0..1u64 << n).all(|m| {
            let j = SubsetMask::from_bits(m);
            let inside: BigRational = j.iter().map(|i| l.values()[i - 1].clone()).sum();
            let outside: BigRational = j
                .complement(n)
                .iter()
                .map(|i| l.values()[i - 1].clone())
                .sum();
            inside != outside
        })
    }

    #[test]
    fn sphere_product_vector_generic_by_exhaustive_scan() {
        let ex1 = parse_length_vector("3/20,3/20,3/20,3/20,2/5").unwrap();
        assert!(generic_by_full_scan(&ex1));
        assert!(!generic_by_full_scan(&lv(&[1, 1, 2])));
    }

    #[test]
    fn long_subsets_examples() {
        let got: Vec<_> = lv(&[1, 1, 1]).long_subsets_containing_last().collect();
        assert_eq!(got, vec![s(&[1, 3]), s(&[2, 3]), s(&[1, 2, 3])]);
        let got: Vec<_> = lv(&[1, 1, 3]).long_subsets_containing_last().collect();
        assert_eq!(got, vec![s(&[3]), s(&[1, 3]), s(&[2, 3]), s(&[1, 2, 3])]);
        assert_eq!(lv(&[1, 1, 1, 10]).long_subsets_containing_last().count(), 8);
    }

    #[test]
    fn empty_space() {
        assert_eq!(lv(&[1, 1, 3]).empty_space_witness(), Some(3));
        assert_eq!(lv(&[3, 1, 1]).empty_space_witness(), Some(1));
        assert_eq!(lv(&[1, 1, 1]).empty_space_witness(), None);
        assert_eq!(lv(&[1, 1, 2]).empty_space_witness(), None);
    }

    #[test]
    fn sorting_reports_permutation() {
        let (sorted, perm) = lv(&[2, 4, 1, 2, 4, 2]).sorted();
        assert_eq!(sorted, lv(&[1, 2, 2, 2, 4, 4]));
        assert_eq!(perm, vec![3, 1, 4, 6, 2, 5]);
        assert!(sorted.is_ordered());
        assert_eq!(lv(&[2, 1, 3]).require_ordered(), Err(Error::NotOrdered));
    }

    #[test]
    fn big_weights_path_agrees() {
        let huge = BigInt::from(10).pow(40);
        let values: Vec<BigRational> = [1, 2, 2, 2, 4, 4]
            .iter()
            .map(|&v| BigRational::from_integer(&huge * v + 1))
            .collect();
        let l = LengthVector::new(values).unwrap();
        assert!(matches!(l.weights, Weights::Big));
        for j in l.subsets_containing_last() {
            assert_eq!(l.excess_sign(j), l.excess(j).sign_cmp());
        }
    }

    #[test]
    fn subset_out_of_range() {
        let l = lv(&[1, 1, 1]);
        assert!(l.check_subset(s(&[4])).is_err());
        assert!(l.check_subset(s(&[1, 3])).is_ok());
    }
}
