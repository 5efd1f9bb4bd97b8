//! Combinatorial and topological classification of polygon spaces `E_d(l)`:
//! closed n-gons in `R^d` with prescribed side lengths, up to translation.
//!
//! * [`lengths`]: exact length vectors and the short / median / long calculus.
//! * [`chambers`]: chamber signatures, comparisons and the small-n census.
//! * [`cohomology`]: Z2-Betti numbers, ring presentations and pair verdicts.
//! * [`morse`]: the energy function on products of spheres, its critical
//!   submanifolds and Hessian signatures, and numerical polygon realization.

pub mod chambers;
pub mod cohomology;
pub mod error;
pub mod lengths;
mod lp;
pub mod morse;

pub use chambers::{
    chamber_signature, enumerate_chambers, realize_signature, same_chamber,
    same_chamber_up_to_permutation, same_stratum, CensusResult, ChamberComparison,
    ChamberSignature, StratumSignature,
};
pub use cohomology::{
    betti_table, classify_pair, cohomology_report, quotient_basis_dimensions, recognize_special,
    ring_presentation, rings_isomorphic_bruteforce, BettiTable, CohomologyReport, PairVerdict,
    Polynomial, RingPresentation, SpecialType,
};
pub use error::{Error, Result};
pub use lengths::{
    parse_length_vector, parse_rational, LengthVector, SubsetClass, SubsetKind, SubsetMask,
};
pub use morse::{
    critical_data, energy, find_polygon, hessian_signature, jacobian_rank, verify,
    CriticalSubmanifoldData, PolygonConfiguration, Realization, Signature, SolverOptions,
    VerifyReport,
};
