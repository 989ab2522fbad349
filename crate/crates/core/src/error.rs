use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("bracket index out of order: entry ({i},{j},{k}) needs i < j (1-based)")]
    IndexOrder { i: usize, j: usize, k: usize },
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("Jacobi identity fails on basis triple ({0},{1},{2})")]
    Jacobi(usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error("catalog parameter out of range: {0}")]
    CatalogParameter(String),
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("not completely solvable: {0}")]
    NotCompletelySolvable(String),
    #[error("spectrum not in the open right half-plane: {0}")]
    Spectrum(String),
    #[error("contraction diverges at {0}")]
    Divergent(String),
    #[error("not a Cartan subalgebra: {0}")]
    NotCartan(String),
    #[error("irrational weights: char poly factor {0} has no rational roots")]
    IrrationalWeights(String),
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("invalid cochain: {0}")]
    Cochain(String),
    #[error("torus rejected: {0}")]
    Torus(String),
    #[error("graph of tau is not a subalgebra: {0}")]
    GraphNotClosed(String),
    #[error("unsupported derivation for the curvature frame: {0}")]
    Frame(String),
    #[error("degenerate plane")]
    DegeneratePlane,
    #[error("invalid building parameters: {0}")]
    Building(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
