use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::hessian::{HessianMatrix, Signature};
use crate::cohomology::Polynomial;
use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetKind, SubsetMask};

/// The critical sphere `P_J` of `f` for a long `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSubmanifoldData {
    #[serde(rename = "J")]
    pub j: SubsetMask,
    /// `-L_J^2`, in the caller's units.
    #[serde(serialize_with = "as_string")]
    pub critical_value: BigRational,
    /// Morse-Bott index, `(d - 1)` times the negative inertia of the Hessian.
    pub index: usize,
    /// `dim P_J = d - 1`.
    pub dim: usize,
    pub hessian_signature: Signature,
    pub kernel_certificate: bool,
}

impl CriticalSubmanifoldData {
    /// `(d - 1)(n - |J|)`.
    pub fn predicted_index(&self, n: usize) -> usize {
        self.dim * (n - self.j.len())
    }
}

fn as_string<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub(crate) fn require_morse_dimension(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// One record per long subset, sorted by critical value and then
/// lexicographically.
pub fn critical_data(l: &LengthVector, d: u32) -> Result<Vec<CriticalSubmanifoldData>> {
    require_morse_dimension(d)?;
    l.require_generic()?;
    let n = l.n();
    let dim = (d - 1) as usize;
    let mut records: Vec<CriticalSubmanifoldData> = (1..1u64 << n)
        .map(SubsetMask::from_bits)
        .filter(|&j| l.kind(j) == SubsetKind::Long)
        .map(|j| {
            let h = HessianMatrix::new(l, j)?;
            let sig = h.signature();
            let lj = l.excess(j);
            Ok(CriticalSubmanifoldData {
                j,
                critical_value: -(&lj * &lj),
                index: dim * sig.negative,
                dim,
                hessian_signature: sig,
                kernel_certificate: h.kernel_certificate(),
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by(|a, b| {
        a.critical_value
            .cmp(&b.critical_value)
            .then_with(|| a.j.lex_cmp(b.j))
    });
    Ok(records)
}

/// `sum_{J long} t^{ind P_J} (1 + t^{d-1})`, the Poincaré polynomial of the
/// sublevel set complement when the function is perfect.
pub fn complement_poincare_polynomial(l: &LengthVector, d: u32) -> Result<Polynomial> {
    crate::cohomology::require_dimension(d)?;
    Ok(polynomial_from(&critical_data(l, d)?, d))
}

fn polynomial_from(records: &[CriticalSubmanifoldData], d: u32) -> Polynomial {
    let step = (d - 1) as usize;
    let top = records.iter().map(|r| r.index).max().unwrap_or(0) + step;
    let mut coeffs = vec![0i64; top + 1];
    for r in records {
        coeffs[r.index] += 1;
        coeffs[r.index + step] += 1;
    }
    Polynomial::new(coeffs)
}

/// Every coefficient sits in a degree divisible by `d - 1`, and the one in
/// degree `(d-1)k` counts long sets of size `n-k+1` plus those of size `n-k`.
pub fn lacunary_consistency(l: &LengthVector, d: u32) -> Result<bool> {
    crate::cohomology::require_dimension(d)?;
    let records = critical_data(l, d)?;
    Ok(lacunary_check(l.n(), d, &records))
}

pub(crate) fn lacunary_check(n: usize, d: u32, records: &[CriticalSubmanifoldData]) -> bool {
    let step = (d - 1) as usize;
    let poly = polynomial_from(records, d);
    let mut long_by_size = vec![0i64; n + 2];
    for r in records {
        long_by_size[r.j.len()] += 1;
    }
    let lacunary = poly
        .coeffs()
        .iter()
        .enumerate()
        .all(|(deg, &c)| c == 0 || deg % step == 0);
    let counts = (0..=n).all(|k| {
        let expected = long_by_size[n - k + 1] + long_by_size[n - k];
        poly.coeff(step * k) == expected
    });
    lacunary && counts && poly.coeffs().len() <= step * n + 1
}
