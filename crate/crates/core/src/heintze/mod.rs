//! Heintze groups `N ⋊_α ℝ`: verification, normalization, boundary
//! invariants and the hyperbolic classification verdicts.

mod classify;
mod data;

pub use classify::{
    classify_hyperbolic, table2_report, ClassificationVerdict, Commable, DashedPair, Table2Group, Table2Report, Table2Row, Target, UNRESOLVED,
};
pub use data::{
    amalgam, boundary_invariants, heintze_check, heintze_traits, lie_span, min_real_part, normalize_derivation, BoundaryInvariants,
    HeintzeData, HeintzeTraits, NormalizedDerivation, Number, NUMERIC_TOLERANCE,
};
