//! Exact, exhaustive engine for Foatic permutation dynamics.
//!
//! A Foatic map intertwines the Rényi–Foata fundamental bijection with
//! dihedral symmetries of permutation matrices. This crate enumerates every
//! orbit of such a map on `S_n`, tabulates orbit sizes and decides homomesy
//! of permutation statistics with exact integer arithmetic.

pub mod cli;
pub mod dynamics;
mod error;
pub mod foata;
pub mod heaps;
pub mod homomesy;
pub mod perm;
pub mod stats;
pub mod symmetry;

pub use dynamics::{EngineConfig, FoaticAction, Form, Orbit, OrbitSummary, OrbitTableRow};
pub use error::{Error, Result};
pub use heaps::{Heap, TreeShape};
pub use homomesy::{HomomesyVerdict, OrbitAverage};
pub use perm::{CycleDecomposition, PartialPermutation, PermRank, Permutation};
pub use stats::StatisticId;
pub use symmetry::SymmetryOp;
