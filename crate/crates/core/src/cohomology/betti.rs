use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::require_dimension;
use crate::error::Result;
use crate::lengths::{LengthVector, SubsetKind};

/// `a[k]` (resp. `b[k]`) counts short (resp. median) subsets `J` with `n in J`
/// and `|J| = k + 1`, for `k = 0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortMedianCounts {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl ShortMedianCounts {
    /// `a_k`, zero outside `0..n`.
    pub fn a(&self, k: i64) -> u64 {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.a.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn b(&self, k: i64) -> u64 {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.b.get(k))
            .copied()
            .unwrap_or(0)
    }
}

pub fn short_median_counts(l: &LengthVector) -> Result<ShortMedianCounts> {
    l.require_ordered()?;
    let n = l.n();
    let mut counts = ShortMedianCounts {
        a: vec![0; n],
        b: vec![0; n],
    };
    for j in l.subsets_containing_last() {
        let k = j.len() - 1;
        match l.kind(j) {
            SubsetKind::Short => counts.a[k] += 1,
            SubsetKind::Median => counts.b[k] += 1,
            SubsetKind::Long => {}
        }
    }
    Ok(counts)
}

/// Z2-Betti numbers of `E_d(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub d: u32,
    pub manifold_dim: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    /// Nonzero Betti numbers keyed by absolute degree.
    pub dims: BTreeMap<usize, u64>,
    pub generic: bool,
}

impl BettiTable {
    pub fn dim(&self, degree: usize) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn poincare_polynomial(&self) -> Polynomial {
        let top = self.dims.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![0i64; top + 1];
        for (&deg, &dim) in &self.dims {
            coeffs[deg] = dim as i64;
        }
        Polynomial::new(coeffs)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poincare_polynomial().eval(-1)
    }

    /// `dims[i] == dims[manifold_dim - i]` for every `i`.
    pub fn satisfies_poincare_duality(&self) -> bool {
        (0..=self.manifold_dim).all(|i| self.dim(i) == self.dim(self.manifold_dim - i))
    }
}

/// For `d >= 3` and ordered `l` (generic or not):
///
/// * `dim H_{(d-1)k} = a_k + b_k + a_{k-1} + b_{k-1}` for `k = 0..=n-2`,
/// * `dim H_{(d-1)k-1} = a_{n-k-2} + a_{n-k-1}` for `k = 1..=n-1`,
///
/// and every other group vanishes. For nongeneric `l` the space is singular
/// and the table is the formula evaluated verbatim (`generic = false`).
pub fn betti_table(l: &LengthVector, d: u32) -> Result<BettiTable> {
    require_dimension(d)?;
    let counts = short_median_counts(l)?;
    let n = l.n();
    let step = (d - 1) as usize;
    let mut dims = BTreeMap::new();
    let mut put = |deg: usize, v: u64| {
        if v > 0 {
            *dims.entry(deg).or_insert(0) += v;
        }
    };
    for k in 0..=(n as i64 - 2) {
        let v = counts.a(k) + counts.b(k) + counts.a(k - 1) + counts.b(k - 1);
        put(step * k as usize, v);
    }
    for k in 1..=(n as i64 - 1) {
        let v = counts.a(n as i64 - k - 2) + counts.a(n as i64 - k - 1);
        put(step * k as usize - 1, v);
    }
    Ok(BettiTable {
        n,
        d,
        manifold_dim: (n - 1) * step - 1,
        a: counts.a,
        b: counts.b,
        dims,
        generic: l.is_generic(),
    })
}

pub fn poincare_polynomial(l: &LengthVector, d: u32) -> Result<Polynomial> {
    Ok(betti_table(l, d)?.poincare_polynomial())
}

pub fn euler_characteristic(l: &LengthVector, d: u32) -> Result<i64> {
    Ok(betti_table(l, d)?.euler_characteristic())
}

/// Integer polynomial in `t`, coefficients in increasing degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Polynomial(Vec<i64>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.0.get(degree).copied().unwrap_or(0)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return Polynomial::default();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let c = c.abs();
            match (deg, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}t")?,
                (deg, 1) => write!(f, "t^{deg}")?,
                (deg, c) => write!(f, "{c}t^{deg}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// For each `0 <= k <= n`: long `J ∋ n` with `|J| = n-k+1`, long `K ∋ n` with
/// `|K| = n-k`, and the non-long sets of the same two shapes together number
/// `C(n, k)`, the rank of `H_{(d-1)k}` of the product of spheres.
pub fn counting_identity_holds(l: &LengthVector) -> bool {
    let n = l.n();
    let mut long_by_size = vec![0u64; n + 2];
    let mut other_by_size = vec![0u64; n + 2];
    for j in l.subsets_containing_last() {
        match l.kind(j) {
            SubsetKind::Long => long_by_size[j.len()] += 1,
            _ => other_by_size[j.len()] += 1,
        }
    }
    (0..=n).all(|k| {
        let w = n - k + 1;
        let v = n - k;
        let total = long_by_size[w] + long_by_size[v] + other_by_size[w] + other_by_size[v];
        total == binomial(n as u64, k as u64)
    })
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
