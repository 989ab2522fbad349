use num_traits::Zero;
use serde::Serialize;

use crate::linalg::{Matrix, Poly};
use crate::scalar::{self, Scalar};

/// Exact spectral data of a square matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    /// Ascending coefficients of `det(xI − M)`.
    #[serde(serialize_with = "ser_poly")]
    pub charpoly: Poly,
    #[serde(serialize_with = "ser_roots")]
    pub rational_roots: Vec<(Scalar, usize)>,
    /// Distinct real roots (Sturm).
    pub real_root_count: usize,
    pub is_unipotent_after_scaling: bool,
    #[serde(serialize_with = "ser_opt")]
    pub single_real_eigenvalue: Option<Scalar>,
    pub all_roots_positive_real_part: bool,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(scalar::format))
}

fn ser_roots<S: serde::Serializer>(r: &[(Scalar, usize)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|(x, m)| (scalar::format(x), *m)))
}

fn ser_opt<S: serde::Serializer>(x: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&scalar::format(v)),
        None => s.serialize_none(),
    }
}

impl SpectralSummary {
    pub fn all_roots_real(&self) -> bool {
        self.charpoly.all_roots_real()
    }
}

pub fn spectral_summary(m: &Matrix) -> SpectralSummary {
    let p = Poly::charpoly(m);
    let d = m.rows();
    let single = if d == 0 {
        None
    } else {
        let lambda = m.trace() / scalar::int(d as i64);
        (Poly::linear(&lambda).pow(d) == p).then_some(lambda)
    };
    SpectralSummary {
        rational_roots: p.rational_roots(),
        real_root_count: p.count_real_roots(),
        is_unipotent_after_scaling: single.as_ref().is_some_and(|l| !l.is_zero()),
        single_real_eigenvalue: single,
        all_roots_positive_real_part: p.all_roots_positive_real_part(),
        charpoly: p,
    }
}
