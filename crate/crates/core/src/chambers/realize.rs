use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{maximal_in, minimal_in, ChamberSignature};
use crate::lengths::{LengthVector, SubsetMask};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// Largest denominator tried when looking for a small integer representative.
const MAX_ROUNDING_SCALE: i64 = 4096;

/// Finds an ordered generic vector whose chamber signature is `candidate`, or
/// `None` when that chamber of the ordered cone is empty.
///
/// Decides the strict system `0 < l_1 <= ... <= l_n`, `sum l = 1`,
/// `sum_{J ∪ {n}} l < 1/2` for maximal members and `> 1/2` for minimal
/// non-members by maximizing a common slack. The returned vector has small
/// integer entries when rounding the optimum preserves the signature.
pub fn realize_signature(candidate: &ChamberSignature) -> Option<LengthVector> {
    let n = candidate.n();
    let members = candidate.maximal_members();
    let non_members = candidate.minimal_non_members();
    let point = strict_point(n, &members, &non_members)?;
    let realized = round_to_small_integers(n, &point, &members, &non_members)
        .unwrap_or_else(|| integer_vector(&point));
    debug_assert_eq!(
        super::chamber_signature(&realized).as_ref(),
        Ok(candidate),
        "realized vector must reproduce the candidate"
    );
    Some(realized)
}

/// A point of the ordered simplex `{0 < l_1 <= ... <= l_n, sum l = 1}` at which
/// every `J ∪ {n}` with `J` in `members` is strictly short and every one with
/// `J` in `non_members` strictly long. Only the extremal elements of each set
/// under the dominance order are turned into constraints.
pub(crate) fn strict_point(
    n: usize,
    members: &[SubsetMask],
    non_members: &[SubsetMask],
) -> Option<Vec<BigRational>> {
    let members = maximal_in(members);
    let non_members = minimal_in(non_members);
    let width = n + 1;
    let slack = n;
    let zero = BigRational::zero;
    let one = BigRational::one;
    let half = BigRational::new(1.into(), 2.into());

    let mut objective = vec![zero(); width];
    objective[slack] = one();
    let mut lp = LinearProgram::maximize(objective);

    let mut row = vec![zero(); width];
    row[0] = one();
    row[slack] = -one();
    lp.add(row, Relation::GreaterEq, zero());
    for i in 0..n - 1 {
        let mut row = vec![zero(); width];
        row[i + 1] = one();
        row[i] = -one();
        lp.add(row, Relation::GreaterEq, zero());
    }
    let mut row = vec![one(); width];
    row[slack] = zero();
    lp.add(row, Relation::Equal, one());

    let subset_row = |j: SubsetMask, slack_coeff: BigRational| {
        let mut row = vec![zero(); width];
        for i in j.iter() {
            row[i - 1] = one();
        }
        row[n - 1] = one();
        row[slack] = slack_coeff;
        row
    };
    for &j in &members {
        lp.add(subset_row(j, one()), Relation::LessEq, half.clone());
    }
    for &j in &non_members {
        lp.add(subset_row(j, -one()), Relation::GreaterEq, half.clone());
    }
    match lp.solve() {
        LpOutcome::Optimal { mut point, value } if value.is_positive() => {
            point.truncate(n);
            Some(point)
        }
        _ => None,
    }
}

/// Tries `round(scale * point)` for growing `scale`; rounding is monotone, so
/// the order is kept and only positivity and the extremal constraints need
/// rechecking.
fn round_to_small_integers(
    n: usize,
    point: &[BigRational],
    members: &[SubsetMask],
    non_members: &[SubsetMask],
) -> Option<LengthVector> {
    let half = BigRational::new(1.into(), 2.into());
    for scale in 1..=MAX_ROUNDING_SCALE {
        let scale = BigRational::from_integer(scale.into());
        let ints: Vec<BigInt> = point
            .iter()
            .map(|x| (x * &scale + &half).floor().to_integer())
            .collect();
        if !ints[0].is_positive() {
            continue;
        }
        let total: BigInt = ints.iter().sum();
        let twice_with_last = |j: SubsetMask| -> BigInt {
            (j.iter().map(|i| &ints[i - 1]).sum::<BigInt>() + &ints[n - 1]) * 2
        };
        let members_short = members.iter().all(|&j| twice_with_last(j) < total);
        let others_long = non_members.iter().all(|&j| twice_with_last(j) > total);
        if members_short && others_long {
            return LengthVector::new(ints.into_iter().map(BigRational::from_integer).collect())
                .ok();
        }
    }
    None
}

fn integer_vector(point: &[BigRational]) -> LengthVector {
    LengthVector::new(point.to_vec())
        .expect("strict point is positive")
        .normalized()
}
