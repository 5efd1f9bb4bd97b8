use serde::Serialize;

use super::realize::strict_point;
use super::{realize_signature, ChamberSignature};
use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetMask};

pub const MIN_CENSUS_N: usize = 3;
pub const MAX_CENSUS_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEntry {
    pub signature: ChamberSignature,
    pub representative: LengthVector,
}

/// Every chamber of the ordered cone for a fixed `n`, i.e. every chamber up
/// to permutation of the entries, with a small integer representative each.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusResult {
    pub n: usize,
    pub count: usize,
    pub chambers: Vec<CensusEntry>,
}

impl CensusResult {
    pub fn signatures(&self) -> impl Iterator<Item = &ChamberSignature> {
        self.chambers.iter().map(|c| &c.signature)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Open,
    Member,
    NonMember,
}

struct Search {
    n: usize,
    order: Vec<SubsetMask>,
    status: Vec<Status>,
    found: Vec<ChamberSignature>,
}

/// Walks the down-sets of the dominance order on subsets of `{1..n-1}`.
///
/// Subsets are decided in a linear extension of the order (by size, then
/// index sum), so a subset may join only once all its lower covers have.
/// A subset and its complement in `{1..n-1}` are never both members. Every
/// partial assignment must stay strictly realizable: the current feasible
/// point is reused when it already satisfies the next constraint, otherwise
/// an exact LP decides the branch.
pub fn enumerate_chambers(n: usize) -> Result<CensusResult> {
    if !(MIN_CENSUS_N..=MAX_CENSUS_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "census n",
            value: n,
            min: MIN_CENSUS_N,
            max: MAX_CENSUS_N,
        });
    }
    let mut order: Vec<SubsetMask> = (0..1u64 << (n - 1)).map(SubsetMask::from_bits).collect();
    order.sort_by_key(|j| (j.len(), j.iter().sum::<usize>(), j.bits()));
    let mut search = Search {
        n,
        status: vec![Status::Open; order.len()],
        order,
        found: Vec::new(),
    };
    let root = strict_point(n, &[], &[]).expect("the ordered simplex is nonempty");
    search.descend(0, &root);

    let mut signatures = search.found;
    signatures.sort();
    let chambers = signatures
        .into_iter()
        .map(|signature| {
            let representative =
                realize_signature(&signature).expect("every leaf of the search is feasible");
            CensusEntry {
                signature,
                representative,
            }
        })
        .collect::<Vec<_>>();
    Ok(CensusResult {
        n,
        count: chambers.len(),
        chambers,
    })
}

impl Search {
    fn descend(&mut self, pos: usize, point: &[num_rational::BigRational]) {
        if pos == self.order.len() {
            let members = self.collect(Status::Member);
            self.found.push(
                ChamberSignature::from_family(self.n, members).expect("search keeps closure"),
            );
            return;
        }
        let j = self.order[pos];
        let complement = j.complement(self.n - 1);
        let may_join = j
            .lower_covers()
            .all(|c| self.status[c.bits() as usize] == Status::Member)
            && self.status[complement.bits() as usize] != Status::Member;

        let half = num_rational::BigRational::new(1.into(), 2.into());
        let with_last: num_rational::BigRational = j
            .iter()
            .map(|i| &point[i - 1])
            .sum::<num_rational::BigRational>()
            + &point[self.n - 1];

        let mut choices = Vec::with_capacity(2);
        if may_join {
            choices.push((Status::Member, with_last < half));
        }
        choices.push((Status::NonMember, with_last > half));

        for (status, point_still_works) in choices {
            self.status[j.bits() as usize] = status;
            if point_still_works {
                self.descend(pos + 1, point);
            } else {
                let members = self.collect(Status::Member);
                let non_members = self.collect(Status::NonMember);
                if let Some(next) = strict_point(self.n, &members, &non_members) {
                    self.descend(pos + 1, &next);
                }
            }
        }
        self.status[j.bits() as usize] = Status::Open;
    }

    fn collect(&self, wanted: Status) -> Vec<SubsetMask> {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == wanted)
            .map(|(m, _)| SubsetMask::from_bits(m as u64))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::chamber_signature;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_chambers(3).unwrap().count, 2);
        assert_eq!(enumerate_chambers(4).unwrap().count, 3);
    }

    #[test]
    fn n4_families() {
        let census = enumerate_chambers(4).unwrap();
        let fams: Vec<Vec<Vec<usize>>> = census
            .signatures()
            .map(|s| s.family().iter().map(|j| j.indices()).collect())
            .collect();
        assert_eq!(fams, vec![vec![], vec![vec![]], vec![vec![], vec![1]]]);
    }

    #[test]
    fn range_is_enforced() {
        assert!(matches!(
            enumerate_chambers(2),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_chambers(9),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn representatives_round_trip() {
        for n in 3..=6 {
            let census = enumerate_chambers(n).unwrap();
            for entry in &census.chambers {
                let r = &entry.representative;
                assert!(r.is_ordered() && r.is_generic());
                assert_eq!(chamber_signature(r).unwrap(), entry.signature);
            }
        }
    }
}
