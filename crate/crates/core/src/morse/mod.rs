//! Morse-Bott data of `f(u) = -|sum l_j u_j|^2` on `(S^{d-1})^n`.
//!
//! The critical set is the union of the spheres `P_J` of collinear
//! configurations with `J` long; `E_d(l)` is the maximum level `f = 0`.
//! Hessians are exact rational matrices and their inertia is computed by
//! congruence. Polygon realization and the Jacobian check are floating point.

mod config;
mod critical;
mod hessian;
mod jacobian;
mod solver;

use serde::Serialize;

pub use config::{critical_configuration, energy, PolygonConfiguration, UNIT_NORM_TOL};
pub use critical::{
    complement_poincare_polynomial, critical_data, lacunary_consistency, CriticalSubmanifoldData,
};
pub use hessian::{hessian, hessian_signature, inertia, HessianMatrix, Signature};
pub use jacobian::{jacobian_rank, CLOSURE_TOL, RANK_TOL};
pub use solver::{
    find_polygon, EmptySpaceCertificate, PolygonSolution, Realization, SolverOptions,
};

use crate::cohomology::{require_dimension, Polynomial};
use crate::error::Result;
use crate::lengths::LengthVector;

/// Everything `verify` checks for one vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub d: u32,
    pub critical_records: Vec<CriticalSubmanifoldData>,
    /// Every record has the predicted inertia and an exact kernel certificate.
    pub index_law: bool,
    pub complement_poincare: Polynomial,
    pub lacunary_consistent: bool,
    pub realization: Realization,
    pub jacobian_rank: Option<usize>,
}

pub fn verify(l: &LengthVector, d: u32, options: &SolverOptions) -> Result<VerifyReport> {
    require_dimension(d)?;
    let n = l.n();
    let critical_records = critical_data(l, d)?;
    let index_law = critical_records
        .iter()
        .all(|r| r.kernel_certificate && r.hessian_signature == Signature::expected(n, r.j.len()));
    let lacunary_consistent = critical::lacunary_check(n, d, &critical_records);
    let complement_poincare = complement_poincare_polynomial(l, d)?;
    let realization = find_polygon(l, d, options)?;
    let jacobian_rank = match realization.polygon() {
        Some(p) => Some(jacobian_rank(l, &p.configuration)?),
        None => None,
    };
    Ok(VerifyReport {
        n,
        d,
        critical_records,
        index_law,
        complement_poincare,
        lacunary_consistent,
        realization,
        jacobian_rank,
    })
}
