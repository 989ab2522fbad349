use num_traits::Zero;
use serde::Serialize;

use crate::algebra::catalog::{b_real, catalog};
use crate::algebra::{induced_on_quotient, restrict, spectral_summary, LieLaw};
use crate::error::{Error, Result};
use crate::linalg::{jordan_chains, Matrix, Subspace};
use crate::scalar::{self, Scalar};

use super::family::{contract, ScalingFamily};
use super::obstruction::{semicontinuity_obstruction, ObstructionReport};

/// A verified contraction onto a model algebra, or the reason none was built.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    Yes {
        #[serde(skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        family: ScalingFamily,
        limit: LieLaw,
        /// Semicontinuity check between the input and the limit; never obstructed.
        consistency: ObstructionReport,
        /// For the complex-hyperbolic model: whether `ad_A` is diagonalizable on `[g,g]/D³g`.
        #[serde(skip_serializing_if = "Option::is_none")]
        quotient_diagonalizable: Option<bool>,
    },
    No {
        reason: String,
    },
}

impl Certificate {
    pub fn is_yes(&self) -> bool {
        matches!(self, Certificate::Yes { .. })
    }

    fn no(reason: impl Into<String>) -> Self {
        Certificate::No { reason: reason.into() }
    }
}

/// Coordinates in `s`'s echelon basis back to ambient vectors.
fn lift(s: &Subspace, coords: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); s.ambient()];
    for (c, b) in coords.iter().zip(s.basis()) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn complement_vector(n: usize, sub: &Subspace) -> Vec<Scalar> {
    Subspace::full(n).complement_of(sub).pop().expect("codimension one")
}

fn verified(g: &LieLaw, q: &Matrix, w: Vec<Scalar>, model: &LieLaw, n: Option<usize>, diag: Option<bool>) -> Result<Certificate> {
    let family = ScalingFamily::in_basis(q, w)?;
    let limit = contract(g, &family)?;
    if limit != *model {
        return Err(Error::Invalid(format!("contraction limit differs from the model:\n{limit}")));
    }
    let consistency = semicontinuity_obstruction(g, &limit)?;
    Ok(Certificate::Yes { n, family, limit, consistency, quotient_diagonalizable: diag })
}

/// Contraction of `g = ℝ^{n−1} ⋊ ℝA` onto `b(n,ℝ)` when `ad_A` has a single nonzero real eigenvalue.
///
/// The family scales the `s`-th vector of every Jordan chain of `ad_A/λ − 1` by `t^{−s}`.
pub fn lauret_certificate(g: &LieLaw) -> Result<Certificate> {
    let n = g.dim();
    let der = g.derived_algebra();
    if der.dim() + 1 != n {
        return Ok(Certificate::no(format!("[g,g] has codimension {}, not 1", n - der.dim())));
    }
    if !g.bracket_spaces(&der, &der).is_zero() {
        return Ok(Certificate::no("[g,g] is not abelian"));
    }
    let a = complement_vector(n, &der);
    let m = restrict(&g.ad(&a)?, &der)?;
    let summary = spectral_summary(&m);
    let Some(lambda) = summary.single_real_eigenvalue.filter(|l| !l.is_zero()) else {
        return Ok(Certificate::no(format!("ad_A on [g,g] is not unipotent after scaling (char poly {})", summary.charpoly)));
    };
    let inv = lambda.recip();
    let nil = m.scale(&inv).sub(&Matrix::identity(n - 1))?;
    let mut cols = Vec::new();
    let mut w = Vec::new();
    for chain in jordan_chains(&nil)? {
        for (s, v) in chain.iter().enumerate() {
            cols.push(lift(&der, v));
            w.push(scalar::int(-(s as i64) - 1));
        }
    }
    cols.push(a.iter().map(|x| x * &inv).collect());
    w.push(Scalar::zero());
    let model = b_real(n)?;
    verified(g, &Matrix::from_cols(&cols)?, w, &model, Some(n), None)
}

/// Contraction of a 4-dimensional `heis ⋊ ℝA` onto the complex hyperbolic plane model.
pub fn h2c_certificate(g: &LieLaw) -> Result<Certificate> {
    if g.dim() != 4 {
        return Err(Error::Dimension { expected: 4, got: g.dim() });
    }
    let der = g.derived_algebra();
    if der.dim() != 3 {
        return Ok(Certificate::no(format!("[g,g] has dimension {}, not 3", der.dim())));
    }
    let d3 = g.bracket_spaces(&der, &der);
    if d3.dim() != 1 || !g.subalgebra(&der)?.is_nilpotent() {
        return Ok(Certificate::no(if d3.is_zero() { "[g,g] is abelian, not Heisenberg" } else { "[g,g] is not Heisenberg" }));
    }
    let a = complement_vector(4, &der);
    let ad_a = g.ad(&a)?;
    let (quot, comp) = induced_on_quotient(&ad_a, &der, &d3)?;
    let summary = spectral_summary(&quot);
    let Some(lambda) = summary.single_real_eigenvalue.filter(|l| !l.is_zero()) else {
        return Ok(Certificate::no(format!("ad_A on [g,g]/D³g is not unipotent after scaling (char poly {})", summary.charpoly)));
    };
    let top = restrict(&ad_a, &d3)?[(0, 0)].clone();
    if top != &lambda * scalar::int(2) {
        return Ok(Certificate::no(format!(
            "eigenvalue {} on D³g is not twice {}",
            scalar::format(&top),
            scalar::format(&lambda)
        )));
    }
    let inv = lambda.recip();
    let a_n: Vec<Scalar> = a.iter().map(|x| x * &inv).collect();
    let m = g.ad(&a_n)?.sub(&Matrix::identity(4))?;
    let z0 = d3.basis()[0].clone();
    let nil = quot.scale(&inv).sub(&Matrix::identity(2))?;
    let diagonalizable = nil.is_zero();
    let mut lifts: Vec<Vec<Scalar>> = Vec::new();
    for chain in jordan_chains(&nil)? {
        let mut prev: Option<Vec<Scalar>> = None;
        for coords in chain {
            let mut u: Vec<Scalar> = vec![Scalar::zero(); 4];
            for (c, b) in coords.iter().zip(&comp) {
                for (o, x) in u.iter_mut().zip(b) {
                    *o += c * x;
                }
            }
            // (ad_A − 1)u = prev + c·Z₀ and (ad_A − 1)Z₀ = Z₀, so u − c·Z₀ is an exact chain vector.
            let mut r = m.mul_vec(&u)?;
            if let Some(p) = &prev {
                for (x, y) in r.iter_mut().zip(p) {
                    *x -= y;
                }
            }
            let c = d3.coordinates(&r).ok_or_else(|| Error::Invalid("quotient chain does not lift".into()))?[0].clone();
            for (x, z) in u.iter_mut().zip(&z0) {
                *x -= &c * z;
            }
            prev = Some(u.clone());
            lifts.push(u);
        }
    }
    let (x, y) = (lifts[0].clone(), lifts[1].clone());
    let z = g.bracket(&x, &y)?;
    let q = Matrix::from_cols(&[x, y, z, a_n])?;
    let model = catalog("h2c_solvable")?;
    verified(g, &q, [0, -1, -1, 0].iter().map(|&e| scalar::int(e)).collect(), &model, None, Some(diagonalizable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn lauret_examples() {
        let b4 = catalog("b(4,R)").unwrap();
        match lauret_certificate(&b4).unwrap() {
            Certificate::Yes { n, family, .. } => {
                assert_eq!(n, Some(4));
                assert_eq!(family.w, vec![int(-1), int(-1), int(-1), int(0)]);
            }
            c => panic!("{c:?}"),
        }
        let j3 = LieLaw::abelian(3).semidirect_rank_one(&Matrix::jordan(3, int(1))).unwrap();
        match lauret_certificate(&j3).unwrap() {
            Certificate::Yes { family, consistency, .. } => {
                assert_eq!(family.w, vec![int(-1), int(-2), int(-3), int(0)]);
                assert!(!consistency.is_obstructed());
            }
            c => panic!("{c:?}"),
        }
        assert!(!lauret_certificate(&catalog("s_second").unwrap()).unwrap().is_yes());
    }

    #[test]
    fn lauret_survives_basis_change_and_scaling() {
        let j = LieLaw::abelian(3).semidirect_rank_one(&Matrix::jordan(3, scalar::frac(5, 2))).unwrap();
        let p = Matrix::from_i64(&[&[1, 1, 0, 2], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
        assert!(lauret_certificate(&j.basis_change(&p).unwrap()).unwrap().is_yes());
    }

    #[test]
    fn h2c_examples() {
        match h2c_certificate(&catalog("s_prime").unwrap()).unwrap() {
            Certificate::Yes { family, quotient_diagonalizable, .. } => {
                assert_eq!(family.w, vec![int(0), int(-1), int(-1), int(0)]);
                assert_eq!(quotient_diagonalizable, Some(false));
            }
            c => panic!("{c:?}"),
        }
        assert!(h2c_certificate(&catalog("h2c_solvable").unwrap()).unwrap().is_yes());
        match h2c_certificate(&catalog("s_second").unwrap()).unwrap() {
            Certificate::No { reason } => assert!(reason.contains("abelian")),
            c => panic!("{c:?}"),
        }
        assert!(matches!(h2c_certificate(&catalog("heis(3)").unwrap()), Err(Error::Dimension { .. })));
    }

    #[test]
    fn h2c_in_a_scrambled_basis() {
        let s = catalog("s_prime").unwrap();
        let p = Matrix::from_i64(&[&[2, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 1, 0, 3]]);
        assert!(h2c_certificate(&s.basis_change(&p).unwrap()).unwrap().is_yes());
    }
}
