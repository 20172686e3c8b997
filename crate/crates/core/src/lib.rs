//! Exact computations with nilpotent Lie algebras given by structure constants.

pub mod catalog;
pub mod classify;
pub mod cohomology;
pub mod derivations;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod grading;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod snf;
pub mod special;

pub use error::{Error, Result};
pub use lie::{BilinearMap, LieAlgebra};
pub use linalg::{RatMatrix, Rational, Subspace};
