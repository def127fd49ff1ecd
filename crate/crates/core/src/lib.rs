//! Exact combinatorial invariants of regular semisimple Hessenberg varieties.
//!
//! A Hessenberg function `h` determines a labeled graph on the symmetric
//! group; polynomial-valued functions on its vertices subject to edge
//! congruences recover the torus-equivariant cohomology of the corresponding
//! variety. This crate builds those graphs, constructs the classical
//! generating classes, counts Betti numbers three independent ways, derives
//! finite presentations of the degree-2 and higher pieces, and decomposes
//! the symmetric-group action into permutation modules — all over exact
//! integer/rational arithmetic.

pub mod betti;
pub mod classes;
pub mod cohomology;
pub mod combinatorics;
pub mod error;
pub mod gkm;
pub mod rep;
pub mod symbolic;

pub use combinatorics::{HessenbergFunction, Partition, Permutation};
pub use error::{Error, Result};
