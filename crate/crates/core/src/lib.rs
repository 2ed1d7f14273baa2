//! Exact rational engine for invariant pseudo-Kähler geometry on
//! finite-dimensional Lie algebras.
//!
//! Basis labels in public constructors, JSON documents and error values are
//! 1-based (`e_1, ..., e_n`); matrix and vector indexing is 0-based.

pub mod affine;
pub mod catalog;
pub mod classify;
pub mod compat;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod json;
pub mod linalg;
pub mod lie;
pub mod poly;
pub mod report;
pub mod riemann;
pub mod scalar;

pub use error::{Error, Result};
pub use lie::{new_lie_algebra, BracketEntry, LieAlgebra, Subspace};
pub use linalg::{Matrix, Vector};
pub use scalar::Scalar;
