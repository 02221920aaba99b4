//! Finite lattice computations: laws, congruences, Dec, embeddings, free-lattice words,
//! exhaustive enumeration and theorem harnesses.

pub mod bits;
pub mod canon;
pub mod catalog;
pub mod decomp;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod freeterm;
pub mod io;
pub mod laws;
pub mod lattice;
pub mod report;
pub mod theorems;
pub mod variety;

pub use error::{Error, Result};
pub use lattice::{CoverDiagram, Elem, FiniteLattice};
