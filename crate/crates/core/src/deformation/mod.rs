//! Scaling families, contraction limits and degeneration tests.
//!
//! A family `φ_t = diag(t^{w_i})` (optionally after a fixed basis change)
//! turns a law into Laurent polynomials `c_{ij}^k t^{w_i+w_j−w_k}`; the limit
//! `t → ∞` exists when no positive power occurs. Obstruction reports are
//! one-sided: finding none never proves a degeneration.

mod certificate;
mod cornulier;
mod expand;
mod family;
mod graded;
mod obstruction;
mod torus;

pub use certificate::{h2c_certificate, lauret_certificate, Certificate};
pub use cornulier::{check_cartan, check_completely_solvable, cornulier_reduction, weight_spaces, CornulierReduction, WeightSpace};
pub use expand::{cochain_law, linear_expandability, Expandability};
pub use family::{apply_family, contract, contraction_limit, Laurent, LaurentLaw, ScalingFamily};
pub use graded::{graded_nilpotent, GradedNilpotent};
pub use obstruction::{
    derived_action_charpoly, projectively_equal, semicontinuity_obstruction, spectral_obstruction, ObstructionReport, ObstructionRow,
    ObstructionVerdict, SpectralVerdict,
};
pub use torus::{modification, torus_check, Modification, TorusData};
