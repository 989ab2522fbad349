//! Lie algebra laws over ℚ and their structure.

pub mod catalog;
mod fingerprint;
mod law;
mod spectral;
mod structure;

pub use catalog::catalog;
pub use fingerprint::AlgebraFingerprint;
pub use law::{default_labels, BracketEntry, JacobiReport, LawBuilder, LawJson, LieLaw};
pub use spectral::{spectral_summary, SpectralSummary};
pub use structure::{flatten, induced_on_quotient, restrict, solve, unflatten, Derivations, StructuralSeries};
