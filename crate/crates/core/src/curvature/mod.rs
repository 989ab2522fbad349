//! Sectional curvature of the left-invariant metrics on `ℝ^{n−1} ⋊_α ℝ`
//! making the `ε`-scaled Jordan frame orthonormal. Floating point throughout.

mod frame;
mod pinch;
mod tensor;

pub use frame::{frame_matrices, Block, BlockLayout, FrameMatrices, MetricFrame};
pub use pinch::{pansu_consistency, pinching_estimate, CurvatureReport, PansuReport, PANSU_TOLERANCE};
pub use tensor::{curvature_tensor, sectional, CurvatureModel};
