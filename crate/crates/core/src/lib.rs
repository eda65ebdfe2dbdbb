//! Exact computations with multi-weighted blow-ups of affine space: Newton polyhedra,
//! monomial ideals, polynomial ideals with a logarithmic structure, transforms under
//! blow-up, the logarithmic resolution invariant and the resolution driver.

pub mod blowup;
pub mod error;
pub mod groebner;
pub mod invariant;
pub mod lattice;
mod linalg;
pub mod monomial;
pub mod nondegenerate;
pub mod parse;
pub mod poly;
pub mod resolve;

pub use error::{Error, Result};
