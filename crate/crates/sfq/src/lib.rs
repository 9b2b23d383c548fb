//! Exact value distributions of Jacobi-Trudi determinants over finite
//! fields.
//!
//! A homomorphism from the ring of symmetric functions to GF(q) is fixed
//! by the images of h_1, h_2, ...; the Schur function of a shape is then
//! the determinant of its Jacobi-Trudi matrix in those images. This crate
//! enumerates the assignment spaces exactly, reduces the matrices
//! symbolically, and checks the counts against the known closed forms
//! (1/q families, quasi-polynomial numerators, GL(k) complements,
//! composition and Moebius sums for nonzero targets).

pub mod counting;
pub mod error;
pub mod field;
pub mod formulas;
pub mod harness;
pub mod partitions;
pub mod poly;
pub mod report;
pub mod schur;

pub use error::{Error, Result};
