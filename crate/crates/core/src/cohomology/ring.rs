use std::collections::HashSet;

use serde::Serialize;

use super::require_dimension;
use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetKind, SubsetMask};

/// Largest number of surviving variables the bijection search will attempt.
pub const MAX_BIJECTION_VARS: usize = 12;

/// `Λ(Z_1, ..., Z_n) / I` with every `Z_j` in degree `d - 1`, squares zero, and
/// `I` generated by `Z_J` for `J ⊆ {1..n-1}` with `J ∪ {n}` long.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentation {
    pub n: usize,
    pub d: u32,
    pub generator_degree: u32,
    /// Variables `Z_j` killed outright because `{j, n}` is long.
    pub pruned: Vec<usize>,
    /// Inclusion-minimal generating sets, sorted lexicographically.
    #[serde(rename = "generators")]
    pub minimal_generators: Vec<SubsetMask>,
}

impl RingPresentation {
    pub fn is_zero_ring(&self) -> bool {
        self.minimal_generators.first() == Some(&SubsetMask::EMPTY)
    }

    /// Variables that survive pruning; always includes `n` unless the ring is zero.
    pub fn kept_variables(&self) -> Vec<usize> {
        if self.is_zero_ring() {
            return Vec::new();
        }
        (1..=self.n).filter(|j| !self.pruned.contains(j)).collect()
    }

    /// Generators of the pruned presentation: those of size at least two.
    pub fn essential_generators(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.minimal_generators
            .iter()
            .copied()
            .filter(|g| g.len() >= 2)
    }

    /// True when `Z^S` is not in the ideal (`S` may contain `n`).
    pub fn survives(&self, s: SubsetMask) -> bool {
        !self.minimal_generators.iter().any(|g| g.is_subset_of(s))
    }
}

pub fn ring_presentation(l: &LengthVector, d: u32) -> Result<RingPresentation> {
    require_dimension(d)?;
    l.require_ordered()?;
    let n = l.n();
    let last = SubsetMask::singleton(n);
    let is_long = |j: SubsetMask| l.kind(j.union(last)) == SubsetKind::Long;
    let mut generators: Vec<SubsetMask> = (0..1u64 << (n - 1))
        .map(SubsetMask::from_bits)
        .filter(|&j| is_long(j) && j.iter().all(|i| !is_long(j.without(i))))
        .collect();
    generators.sort_by(|a, b| a.lex_cmp(*b));
    // Singletons sort by index under the lexicographic order.
    let pruned = generators
        .iter()
        .filter(|g| g.len() == 1)
        .flat_map(|g| g.iter())
        .collect();
    Ok(RingPresentation {
        n,
        d,
        generator_degree: d - 1,
        pruned,
        minimal_generators: generators,
    })
}

/// Dimension of the quotient in degree `(d-1)k`, for `k = 0..=n`, counted
/// directly as square-free monomials `Z^S` outside the ideal.
pub fn quotient_basis_dimensions(l: &LengthVector, d: u32) -> Result<Vec<u64>> {
    let ring = ring_presentation(l, d)?;
    let n = l.n();
    let mut dims = vec![0u64; n + 1];
    for bits in 0..1u64 << n {
        let s = SubsetMask::from_bits(bits);
        if ring.survives(s) {
            dims[s.len()] += 1;
        }
    }
    Ok(dims)
}

/// Searches for a bijection of surviving variables carrying the essential
/// generators of `p` onto those of `q`.
pub fn rings_isomorphic_bruteforce(p: &RingPresentation, q: &RingPresentation) -> Result<bool> {
    if p.is_zero_ring() || q.is_zero_ring() {
        return Ok(p.is_zero_ring() == q.is_zero_ring());
    }
    let vars_p = p.kept_variables();
    let vars_q = q.kept_variables();
    for vars in [&vars_p, &vars_q] {
        if vars.len() > MAX_BIJECTION_VARS {
            return Err(Error::SearchTooLarge {
                vars: vars.len(),
                max: MAX_BIJECTION_VARS,
            });
        }
    }
    if p.generator_degree != q.generator_degree || vars_p.len() != vars_q.len() {
        return Ok(false);
    }
    let gens_p = Relabeled::new(&vars_p, p.essential_generators());
    let gens_q = Relabeled::new(&vars_q, q.essential_generators());
    if gens_p.size_profile() != gens_q.size_profile() {
        return Ok(false);
    }
    let mut search = Bijection {
        p: &gens_p,
        q: &gens_q,
        image: vec![usize::MAX; vars_p.len()],
        used: 0,
    };
    Ok(search.extend(0))
}

/// Generators rewritten over variables `0..k` (positions in the kept list).
struct Relabeled {
    k: usize,
    gens: Vec<u64>,
    set: HashSet<u64>,
    /// Per variable, the sorted sizes of generators containing it.
    profile: Vec<Vec<u32>>,
}

impl Relabeled {
    fn new(vars: &[usize], gens: impl Iterator<Item = SubsetMask>) -> Self {
        let gens: Vec<u64> = gens
            .map(|g| {
                g.iter().fold(0u64, |acc, v| {
                    let pos = vars
                        .binary_search(&v)
                        .expect("generator uses a pruned variable");
                    acc | 1 << pos
                })
            })
            .collect();
        let profile = (0..vars.len())
            .map(|v| {
                let mut sizes: Vec<u32> = gens
                    .iter()
                    .filter(|&&g| g >> v & 1 == 1)
                    .map(|g| g.count_ones())
                    .collect();
                sizes.sort_unstable();
                sizes
            })
            .collect();
        Relabeled {
            k: vars.len(),
            set: gens.iter().copied().collect(),
            gens,
            profile,
        }
    }

    fn size_profile(&self) -> Vec<Vec<u32>> {
        let mut all: Vec<Vec<u32>> = self.profile.clone();
        all.sort();
        let mut sizes: Vec<u32> = self.gens.iter().map(|g| g.count_ones()).collect();
        sizes.sort_unstable();
        all.push(sizes);
        all
    }
}

struct Bijection<'a> {
    p: &'a Relabeled,
    q: &'a Relabeled,
    image: Vec<usize>,
    used: u64,
}

impl Bijection<'_> {
    fn extend(&mut self, v: usize) -> bool {
        if v == self.p.k {
            return true;
        }
        for w in 0..self.q.k {
            if self.used >> w & 1 == 1 || self.p.profile[v] != self.q.profile[w] {
                continue;
            }
            self.image[v] = w;
            self.used |= 1 << w;
            if self.consistent(v) && self.extend(v + 1) {
                return true;
            }
            self.used &= !(1 << w);
        }
        self.image[v] = usize::MAX;
        false
    }

    /// Every generator of `p` whose variables are all assigned (the newest
    /// being `v`) must map onto a generator of `q`.
    fn consistent(&self, v: usize) -> bool {
        let assigned = (1u64 << (v + 1)) - 1;
        self.p
            .gens
            .iter()
            .filter(|&&g| g >> v & 1 == 1 && g & !assigned == 0)
            .all(|&g| {
                let mapped = (0..=v)
                    .filter(|&i| g >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << self.image[i]);
                self.q.set.contains(&mapped)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LengthVector {
        LengthVector::from_integers(v).unwrap()
    }

    fn masks(sets: &[&[usize]]) -> Vec<SubsetMask> {
        sets.iter()
            .map(|s| SubsetMask::from_indices(s.iter().copied()))
            .collect()
    }

    #[test]
    fn triangle_ring() {
        let r = ring_presentation(&lv(&[1, 1, 1]), 3).unwrap();
        assert_eq!(r.pruned, vec![1, 2]);
        assert_eq!(r.minimal_generators, masks(&[&[1], &[2]]));
        assert_eq!(r.kept_variables(), vec![3]);
        assert_eq!(r.generator_degree, 2);
    }

    #[test]
    fn hexagon_generators() {
        let r = ring_presentation(&lv(&[1, 2, 2, 2, 4, 4]), 3).unwrap();
        assert_eq!(
            r.minimal_generators,
            masks(&[&[2, 3], &[2, 4], &[3, 4], &[5]])
        );
        assert_eq!(r.pruned, vec![5]);
    }

    #[test]
    fn empty_space_gives_zero_ring() {
        let r = ring_presentation(&lv(&[1, 1, 3]), 3).unwrap();
        assert!(r.is_zero_ring());
        assert_eq!(r.minimal_generators, vec![SubsetMask::EMPTY]);
        assert_eq!(
            quotient_basis_dimensions(&lv(&[1, 1, 3]), 3).unwrap(),
            vec![0; 4]
        );
    }

    #[test]
    fn quotient_dimensions() {
        assert_eq!(
            quotient_basis_dimensions(&lv(&[1, 2, 2, 2, 4, 4]), 3).unwrap(),
            vec![1, 5, 7, 3, 0, 0, 0]
        );
        assert_eq!(
            quotient_basis_dimensions(&lv(&[1, 1, 1]), 3).unwrap(),
            vec![1, 1, 0, 0]
        );
    }

    #[test]
    fn generators_form_an_antichain() {
        let r = ring_presentation(&lv(&[1, 3, 4, 5, 6, 8, 9]), 3).unwrap();
        for a in &r.minimal_generators {
            for b in &r.minimal_generators {
                assert!(a == b || !a.is_subset_of(*b));
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let p = ring_presentation(&lv(&[1, 2, 2, 2, 4, 4]), 3).unwrap();
        let scaled = ring_presentation(&lv(&[2, 4, 4, 4, 8, 8]), 3).unwrap();
        let other = ring_presentation(&lv(&[1, 1, 3, 4, 8, 8]), 3).unwrap();
        assert!(rings_isomorphic_bruteforce(&p, &scaled).unwrap());
        assert!(!rings_isomorphic_bruteforce(&p, &other).unwrap());
        assert!(rings_isomorphic_bruteforce(&other, &other).unwrap());
    }

    #[test]
    fn isomorphism_ignores_variable_names() {
        // Same essential generators up to swapping Z_2 and Z_4.
        let base = |gens: Vec<SubsetMask>| RingPresentation {
            n: 5,
            d: 3,
            generator_degree: 2,
            pruned: vec![],
            minimal_generators: gens,
        };
        let p = base(masks(&[&[1, 2], &[2, 3, 5]]));
        let q = base(masks(&[&[1, 4], &[3, 4, 5]]));
        let r = base(masks(&[&[1, 2], &[3, 4, 5]]));
        assert!(rings_isomorphic_bruteforce(&p, &q).unwrap());
        assert!(!rings_isomorphic_bruteforce(&p, &r).unwrap());
        assert_eq!(r.kept_variables(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn zero_rings_and_limits() {
        let zero = ring_presentation(&lv(&[1, 1, 3]), 3).unwrap();
        let tri = ring_presentation(&lv(&[1, 1, 1]), 3).unwrap();
        assert!(rings_isomorphic_bruteforce(&zero, &zero).unwrap());
        assert!(!rings_isomorphic_bruteforce(&zero, &tri).unwrap());

        let big = RingPresentation {
            n: 13,
            d: 3,
            generator_degree: 2,
            pruned: vec![],
            minimal_generators: vec![],
        };
        assert_eq!(
            rings_isomorphic_bruteforce(&big, &big),
            Err(Error::SearchTooLarge { vars: 13, max: 12 })
        );
    }

    #[test]
    fn requires_valid_dimension() {
        assert_eq!(
            ring_presentation(&lv(&[1, 1, 1]), 2),
            Err(Error::UnsupportedDimension(2))
        );
    }
}
