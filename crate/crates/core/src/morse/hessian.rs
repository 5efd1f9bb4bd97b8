use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetKind, SubsetMask};

/// Inertia of a real symmetric form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    /// What the index law predicts at `P_J` for `|J| = k` out of `n`.
    pub fn expected(n: usize, k: usize) -> Self {
        Signature {
            positive: k - 1,
            negative: n - k,
            zero: 1,
        }
    }
}

/// Reduced Hessian of `f` at `P_J`, normalized to `M = D - E` with
/// `D_jj = ε_J(j) L_J / l_j` and `E` the all-ones matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianMatrix {
    j: SubsetMask,
    entries: Vec<Vec<BigRational>>,
    kernel: Vec<BigRational>,
}

fn epsilon(j: SubsetMask, i: usize) -> BigRational {
    if j.contains(i) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

impl HessianMatrix {
    pub fn new(l: &LengthVector, j: SubsetMask) -> Result<Self> {
        l.check_subset(j)?;
        if l.kind(j) != SubsetKind::Long {
            return Err(Error::SubsetNotLong(j));
        }
        let n = l.n();
        let lj = l.excess(j);
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let mut v = -BigRational::one();
                        if r == c {
                            v += epsilon(j, r + 1) * &lj / &l.values()[r];
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let kernel = (0..n).map(|i| epsilon(j, i + 1) * &l.values()[i]).collect();
        Ok(HessianMatrix { j, entries, kernel })
    }

    pub fn subset(&self) -> SubsetMask {
        self.j
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// `w_j = ε_J(j) l_j`.
    pub fn kernel_vector(&self) -> &[BigRational] {
        &self.kernel
    }

    /// Exact check that `M w = 0`.
    pub fn kernel_certificate(&self) -> bool {
        self.entries.iter().all(|row| {
            row.iter()
                .zip(&self.kernel)
                .map(|(a, b)| a * b)
                .sum::<BigRational>()
                .is_zero()
        })
    }

    /// Inertia by exact congruence. The last coordinate of the kernel vector is
    /// nonzero, so `{x_n = 0}` complements the kernel: the form on `R^n` is the
    /// form on that hyperplane plus one null direction.
    pub fn signature(&self) -> Signature {
        let n = self.entries.len();
        let block: Vec<Vec<BigRational>> = self.entries[..n - 1]
            .iter()
            .map(|row| row[..n - 1].to_vec())
            .collect();
        let mut s = inertia(block);
        s.zero += 1;
        s
    }
}

/// Sylvester inertia of a symmetric rational matrix via symmetric elimination
/// with 1x1 and 2x2 pivots.
pub fn inertia(mut a: Vec<Vec<BigRational>>) -> Signature {
    let mut sig = Signature::default();
    while !a.is_empty() {
        let m = a.len();
        if let Some(p) = (0..m).find(|&i| !a[i][i].is_zero()) {
            if a[p][p].is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            a = schur_1x1(&a, p);
            continue;
        }
        // Zero diagonal: any nonzero a_pq spans a hyperbolic plane.
        let off = (0..m).find_map(|p| (p + 1..m).find(|&q| !a[p][q].is_zero()).map(|q| (p, q)));
        match off {
            Some((p, q)) => {
                sig.positive += 1;
                sig.negative += 1;
                a = schur_2x2(&a, p, q);
            }
            None => {
                sig.zero += m;
                break;
            }
        }
    }
    sig
}

fn schur_1x1(a: &[Vec<BigRational>], p: usize) -> Vec<Vec<BigRational>> {
    let rest: Vec<usize> = (0..a.len()).filter(|&i| i != p).collect();
    let pivot = &a[p][p];
    rest.iter()
        .map(|&r| {
            let f = &a[r][p] / pivot;
            rest.iter().map(|&c| &a[r][c] - &f * &a[p][c]).collect()
        })
        .collect()
}

/// Eliminates the block `[[0, b], [b, 0]]` on rows/columns `p, q`.
fn schur_2x2(a: &[Vec<BigRational>], p: usize, q: usize) -> Vec<Vec<BigRational>> {
    let rest: Vec<usize> = (0..a.len()).filter(|&i| i != p && i != q).collect();
    let b = &a[p][q];
    // Inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]].
    rest.iter()
        .map(|&r| {
            rest.iter()
                .map(|&c| &a[r][c] - (&a[r][p] * &a[q][c] + &a[r][q] * &a[p][c]) / b)
                .collect()
        })
        .collect()
}

pub fn hessian(l: &LengthVector, j: SubsetMask) -> Result<HessianMatrix> {
    HessianMatrix::new(l, j)
}

pub fn hessian_signature(l: &LengthVector, j: SubsetMask) -> Result<Signature> {
    Ok(HessianMatrix::new(l, j)?.signature())
}
