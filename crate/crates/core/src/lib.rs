//! Exact computations with real Lie algebras presented over ℚ.
//!
//! Laws, cohomology, contractions and Heintze classification are exact;
//! the curvature module and a few reported logarithms use `f64`.

pub mod algebra;
pub mod buildings;
pub mod cohomology;
pub mod curvature;
pub mod deformation;
pub mod error;
pub mod heintze;
pub mod linalg;
pub mod scalar;

pub use algebra::{catalog, AlgebraFingerprint, JacobiReport, LieLaw};
pub use cohomology::{Cochain, Module};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix, Poly, Subspace};
pub use scalar::Scalar;
