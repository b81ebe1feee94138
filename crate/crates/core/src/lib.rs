//! Exact lattice toolkit for the non-modular short integer solution problem
//! (SIS over ℤ) and its reduction from approximate SIVP.
//!
//! The crate is `no_std` (with `alloc`): all arithmetic on bases, kernels and
//! lattice vectors is exact, floating point appears only in Gaussian samples
//! and in reported norms. File formats, reports and the command line live in
//! the `sisz` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enumerate;
pub mod error;
pub mod gaussian;
pub mod kernel;
pub mod lattice;
pub mod lll;
pub mod matrix;
pub mod minima;
pub mod reduction;
pub mod rng;
pub mod sis;
pub mod stats;

pub use error::{Error, Result};
pub use lattice::{LatticeBasis, LatticeVector};
pub use matrix::{IntegerMatrix, RationalMatrix};
