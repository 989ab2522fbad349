//! Chevalley–Eilenberg cohomology with trivial and adjoint coefficients.
//!
//! Cochain bases are ordered lexicographically on the index tuple, then on
//! the value index. A basis cochain `e^{i₁…i_q}` takes the value 1 on the
//! increasing tuple `(e_{i₁}, …, e_{i_q})`.

mod cochain;
mod complex;
mod cup;
mod grading;

pub use cochain::{Cochain, CochainBasis, CochainIndex, CochainTerm, Module};
pub use complex::{
    adjoint_h_dim, betti, betti_numbers, classify_cochain, coboundary_preimage, cohomology_basis, d, differential, in_span_mod_coboundaries,
    rank_mod_coboundaries, Classification, CohomologyResult, DifferentialMatrix,
};
pub use cup::{cup_product, cup_square_products, cup_square_rank, wedge};
pub use grading::{class_weight, law_cochain, ClassWeight, Grading};
