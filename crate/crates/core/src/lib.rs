//! Symbolic calculator for the combinatorics of Goodwillie towers on wedges
//! and Moore spectra: Lie-word bookkeeping, cofibre filtrations of layers,
//! partition complex homology and K-theoretic Euler characteristic
//! certificates.

pub mod arith;
pub mod calculus_towers;
pub mod cli;
pub mod cofibre_filtration;
pub mod error;
pub mod fp_linalg;
pub mod k_euler_reports;
pub mod lie_words;
pub mod partition_homology;
pub mod stable_complex;

pub use error::{CalcError, Result};
pub use lie_words::{LieTree, LieWord, MultidegreeBasis};
pub use stable_complex::{Cell, CellKind, OddPrime, StableComplex};
