mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use polyspace::cohomology::{
    betti_table, classify_pair, counting_identity_holds, quotient_basis_dimensions,
    ring_presentation, rings_isomorphic_bruteforce, short_median_counts,
};
use polyspace::morse::{
    critical_data, find_polygon, hessian, Realization, Signature, SolverOptions,
};
use polyspace::{
    chamber_signature, enumerate_chambers, realize_signature, same_chamber, LengthVector,
    SubsetMask,
};
use proptest::prelude::*;

fn lv(v: &[i64]) -> LengthVector {
    LengthVector::from_integers(v).unwrap()
}

/// Nondecreasing generic integer vectors.
fn generic_vector(max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    (3..=max_n)
        .prop_flat_map(|n| prop::collection::vec(1i64..60, n))
        .prop_map(|mut v| {
            v.sort_unstable();
            v
        })
        .prop_filter("generic", |v| common::is_generic(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn signature_matches_brute_force(v in generic_vector(9)) {
        let fam: Vec<u64> = chamber_signature(&lv(&v)).unwrap().family().iter().map(|m| m.bits()).collect();
        prop_assert_eq!(fam, common::signature(&v));
    }

    #[test]
    fn counts_match_brute_force(v in generic_vector(9)) {
        let c = short_median_counts(&lv(&v)).unwrap();
        let (a, b) = common::short_median_counts(&v);
        prop_assert_eq!(c.a, a);
        prop_assert_eq!(c.b, b);
    }

    #[test]
    fn betti_invariants(v in generic_vector(9), d in 3u32..7) {
        let l = lv(&v);
        let t = betti_table(&l, d).unwrap();
        prop_assert!(t.satisfies_poincare_duality());
        prop_assert_eq!(t.total_rank(), 4 * t.a.iter().sum::<u64>());
        prop_assert_eq!(t.dim(0), u64::from(!l.is_empty_space()));
        prop_assert!(t.dim(d as usize - 2) <= 1);
        if d % 2 == 1 {
            prop_assert_eq!(t.euler_characteristic(), 0);
        }
        let q = quotient_basis_dimensions(&l, d).unwrap();
        for (k, dim) in q.into_iter().enumerate() {
            prop_assert_eq!(t.dim((d as usize - 1) * k), dim);
        }
    }

    #[test]
    fn quotient_matches_table_for_nongeneric(mut v in prop::collection::vec(1i64..6, 3..8)) {
        v.sort_unstable();
        let l = lv(&v);
        prop_assert!(counting_identity_holds(&l));
        let t = betti_table(&l, 3).unwrap();
        let q = quotient_basis_dimensions(&l, 3).unwrap();
        for (k, dim) in q.into_iter().enumerate() {
            prop_assert_eq!(t.dim(2 * k), dim);
        }
    }

    #[test]
    fn scaling_and_permuting_preserve_everything(v in generic_vector(8), c in 2i64..9, seed in any::<u64>()) {
        let l = lv(&v);
        let scaled = lv(&v.iter().map(|x| x * c).collect::<Vec<_>>());
        prop_assert!(same_chamber(&l, &scaled).unwrap().same);
        let mut order: Vec<usize> = (0..v.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = l.permuted(&order);
        let verdict = classify_pair(&l, &shuffled, 3).unwrap();
        prop_assert!(verdict.diffeomorphic && verdict.betti_equal);
        let p = ring_presentation(&l, 3).unwrap();
        let q = ring_presentation(&scaled, 3).unwrap();
        prop_assert!(rings_isomorphic_bruteforce(&p, &q).unwrap());
    }

    #[test]
    fn diffeomorphic_implies_betti_equal(a in generic_vector(6), b in generic_vector(6)) {
        prop_assume!(a.len() == b.len());
        let v = classify_pair(&lv(&a), &lv(&b), 3).unwrap();
        prop_assert!(!v.diffeomorphic || v.betti_equal);
        prop_assert_eq!(v.diffeomorphic, v.witness.is_none());
        prop_assert_eq!(v.diffeomorphic, common::signature(&a) == common::signature(&b));
    }

    #[test]
    fn hessian_index_law(v in generic_vector(7)) {
        let l = lv(&v);
        let n = v.len();
        for m in 1..1u64 << n {
            if common::excess(&v, m) <= 0 {
                continue;
            }
            let j = SubsetMask::from_bits(m);
            let h = hessian(&l, j).unwrap();
            prop_assert!(h.kernel_certificate());
            prop_assert_eq!(h.signature(), Signature::expected(n, j.len()));
        }
    }

    #[test]
    fn solver_closes_nonempty_spaces(v in generic_vector(8), d in 2u32..6, seed in any::<u64>()) {
        let l = lv(&v);
        let opts = SolverOptions { seed, ..Default::default() };
        match find_polygon(&l, d, &opts).unwrap() {
            Realization::Polygon(p) => {
                let perimeter: i64 = v.iter().sum();
                prop_assert!(p.configuration.residual() < 1e-9 * perimeter as f64);
                for w in p.history.windows(2) {
                    prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
                }
            }
            Realization::EmptySpace(c) => {
                let n = v.len();
                let min = common::excess(&v, 1 << (n - 1));
                prop_assert!(min > 0);
                prop_assert_eq!(c.min_residual, BigRational::from_integer(min.into()));
            }
        }
    }
}

#[test]
fn one_record_per_complementary_pair() {
    for v in [
        &[1, 1, 1][..],
        &[1, 1, 3],
        &[1, 2, 2, 2, 4, 4],
        &[1, 1, 1, 10],
    ] {
        let recs = critical_data(&lv(v), 3).unwrap();
        let n = v.len();
        assert_eq!(recs.len(), 1 << (n - 1), "{v:?}");
        let full = (1u64 << n) - 1;
        for r in &recs {
            assert!(common::excess(v, r.j.bits()) > 0);
            assert!(recs.iter().all(|s| s.j.bits() != full ^ r.j.bits()));
        }
    }
}

#[test]
fn census_contains_every_small_integer_chamber() {
    for (n, max) in [(6, 9), (7, 6)] {
        let census: BTreeSet<Vec<u64>> = enumerate_chambers(n)
            .unwrap()
            .chambers
            .iter()
            .map(|c| c.signature.family().iter().map(|m| m.bits()).collect())
            .collect();
        let brute = common::brute_census(n, max);
        assert!(brute.is_subset(&census), "n={n}");
    }
    assert_eq!(common::brute_census(6, 16).len(), 21);
}

#[test]
fn census_representatives_round_trip() {
    for n in 3..=6 {
        for c in enumerate_chambers(n).unwrap().chambers {
            assert_eq!(chamber_signature(&c.representative).unwrap(), c.signature);
            let again = realize_signature(&c.signature).unwrap();
            assert_eq!(chamber_signature(&again).unwrap(), c.signature);
        }
    }
}
