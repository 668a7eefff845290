//! Abelian Galois covers of multigraphs and the factorization of their
//! Jacobian polynomials into twisted matroid weight polynomials.

pub mod algebra;
pub mod cover;
pub mod error;
pub mod format;
pub mod graph;
pub mod jacobian;
pub mod matroid;
pub mod verify;
pub mod zeta;
pub mod group;

pub use error::{Error, Result};
pub use cover::{Cover, CoverSpec, Step};
pub use graph::Graph;
pub use group::{AbelianGroup, Character, GroupElement, Subgroup};
