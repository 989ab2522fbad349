//! Exact linear algebra over the rationals.

mod jordan;
mod matrix;
pub mod poly;
pub mod sparse;
mod subspace;

pub use jordan::{jordan_chains, nilpotent_block_sizes};
pub use matrix::{LinearMap, Matrix};
pub use poly::Poly;
pub use sparse::{Echelon, SparseMatrix, SparseVec};
pub use subspace::{unit, Subspace};
