//! Affine symmetry groups of polyhedra, and three computations that exploit
//! them: representation conversion up to symmetry, symmetric linear and
//! integer programming, and lattice-point counting with exact volumes.
//!
//! All arithmetic is exact. Index sets are 0-based in the library API and
//! printed 1-based.

pub mod error;
pub mod latcount;
pub mod permgrp;
pub mod polycore;
pub mod repconv;
pub mod symdetect;
pub mod symilp;

pub use error::{Error, Result};
