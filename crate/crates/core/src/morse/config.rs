use nalgebra::DVector;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetMask};

/// Allowed deviation of `|u_j|` from 1.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Unit vectors `u_1..u_n` in `R^d`, with the closing residual `|sum l_j u_j|`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonConfiguration {
    d: usize,
    vectors: Vec<DVector<f64>>,
    residual: f64,
}

impl PolygonConfiguration {
    /// Checks unit norms and dimensions, then records the residual for `l`.
    pub fn new(l: &LengthVector, vectors: Vec<DVector<f64>>) -> Result<Self> {
        let residual = weighted_sum(l, &vectors)?.norm();
        let d = vectors[0].len();
        Ok(PolygonConfiguration {
            d,
            vectors,
            residual,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

impl Serialize for PolygonConfiguration {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let vectors: Vec<&[f64]> = self.vectors.iter().map(|v| v.as_slice()).collect();
        let mut s = serializer.serialize_struct("PolygonConfiguration", 3)?;
        s.serialize_field("d", &self.d)?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("vectors", &vectors)?;
        s.end()
    }
}

/// `sum l_j u_j`, after validating the inputs.
fn weighted_sum(l: &LengthVector, u: &[DVector<f64>]) -> Result<DVector<f64>> {
    if u.len() != l.n() {
        return Err(Error::DimensionMismatch {
            left: l.n(),
            right: u.len(),
        });
    }
    let d = u[0].len();
    let mut sum = DVector::zeros(d);
    for (i, (v, w)) in u.iter().zip(l.to_f64()).enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: v.len(),
            });
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NonUnitInput { index: i + 1, norm });
        }
        sum.axpy(w, v, 1.0);
    }
    Ok(sum)
}

/// `f(u) = -|sum l_j u_j|^2`; zero exactly on closed polygons.
pub fn energy(l: &LengthVector, u: &[DVector<f64>]) -> Result<f64> {
    Ok(-weighted_sum(l, u)?.norm_squared())
}

/// The collinear configuration `p_J`: `u_j = e_1` for `j in J`, `-e_1` otherwise.
/// Its energy is `-L_J^2`.
pub fn critical_configuration(
    l: &LengthVector,
    d: usize,
    j: SubsetMask,
) -> Result<PolygonConfiguration> {
    l.check_subset(j)?;
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let vectors = (1..=l.n())
        .map(|i| {
            let mut v = DVector::zeros(d);
            v[0] = if j.contains(i) { 1.0 } else { -1.0 };
            v
        })
        .collect();
    PolygonConfiguration::new(l, vectors)
}
