use serde::Serialize;

use crate::algebra::LieLaw;
use crate::cohomology::betti_numbers;

/// Isomorphism invariants used by the semicontinuity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFingerprint {
    pub dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub betti: Vec<usize>,
    pub der_dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
}

impl LieLaw {
    pub fn fingerprint(&self) -> AlgebraFingerprint {
        let s = self.structural_series();
        let der = self.derivations();
        AlgebraFingerprint {
            dim: self.dim(),
            lower_central_dims: s.lower_central_dims(),
            derived_dims: s.derived_dims(),
            center_dim: self.center().dim(),
            betti: betti_numbers(self),
            der_dim: der.der.dim(),
            inner_dim: der.inn.dim(),
            outer_dim: der.outer_dim,
        }
    }
}
