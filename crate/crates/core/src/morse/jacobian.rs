use nalgebra::{DMatrix, DVector};

use super::config::PolygonConfiguration;
use crate::error::{Error, Result};
use crate::lengths::LengthVector;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;

/// Residual bound, relative to the perimeter, for a configuration to count as closed.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Numerical rank of the differential of
/// `(v_1, ..., v_{n-1}) -> (|v_1|, |v_2 - v_1|, ..., |v_{n-1}|)` at the vertices
/// `v_j = sum_{i <= j} l_i u_i` of a closed polygon. Full rank `n` holds
/// exactly when the sides are not all parallel.
pub fn jacobian_rank(l: &LengthVector, u: &PolygonConfiguration) -> Result<usize> {
    let n = l.n();
    if u.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: u.n(),
        });
    }
    let lengths = l.to_f64();
    let perimeter: f64 = lengths.iter().sum();
    let residual = PolygonConfiguration::new(l, u.vectors().to_vec())?.residual();
    if residual >= CLOSURE_TOL * perimeter {
        return Err(Error::DegenerateConfiguration(format!(
            "polygon does not close (residual {residual:e})"
        )));
    }
    let d = u.d();
    let mut vertex = DVector::<f64>::zeros(d);
    let mut vertices = Vec::with_capacity(n - 1);
    for (v, w) in u.vectors()[..n - 1].iter().zip(&lengths) {
        vertex.axpy(*w, v, 1.0);
        vertices.push(vertex.clone());
    }
    for (k, p) in vertices.iter().enumerate() {
        if p.norm() < CLOSURE_TOL * perimeter {
            return Err(Error::DegenerateConfiguration(format!(
                "vertex v{} is at the origin",
                k + 1
            )));
        }
    }
    // Row k differentiates |v_k - v_{k-1}| (v_0 = v_n = 0): +e on block k, -e on block k-1.
    let mut points = Vec::with_capacity(n + 1);
    points.push(DVector::zeros(d));
    points.extend(vertices);
    points.push(DVector::zeros(d));
    let mut jac = DMatrix::<f64>::zeros(n, d * (n - 1));
    for (k, w) in points.windows(2).enumerate() {
        let e = (&w[1] - &w[0]).normalize().transpose();
        if k < n - 1 {
            jac.view_mut((k, d * k), (1, d)).copy_from(&e);
        }
        if k > 0 {
            jac.view_mut((k, d * (k - 1)), (1, d)).copy_from(&(-&e));
        }
    }
    let sv = jac.singular_values();
    let top = sv.max();
    Ok(sv.iter().filter(|&&s| s > RANK_TOL * top).count())
}
