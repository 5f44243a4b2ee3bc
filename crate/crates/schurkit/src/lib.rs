//! Exact computational toolkit for affine and cyclotomic Schur categories.
//!
//! The crate provides the combinatorial skeleton (multipartitions, tableaux,
//! partition-enhanced matrices), the higher-level RSK bijection, an exact
//! polynomial model of the affine Schur category, the degenerate (cyclotomic)
//! Hecke algebra in normal form, and the DJM Schur-algebra model together
//! with verification sweeps for every defining relation and basis theorem at
//! desk scale. All arithmetic is exact rational; parameters can be kept as
//! genuine indeterminates.

pub mod combinatorics;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod par;
pub mod parmat;
pub mod polyalg;
pub mod rsk;
pub mod schurdjm;
pub mod schurrep;

pub use error::Error;
