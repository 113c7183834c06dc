//! Exact computations with group-graded algebras: gradings, graded
//! polynomial identities, central polynomials and primeness.

pub mod abgroup;
pub mod central;
pub mod cpoly;
pub mod error;
pub mod freegr;
pub mod galg;
pub mod linalg;
pub mod primeness;
pub mod regular;
pub mod scalar;

pub use error::{Error, Result};
