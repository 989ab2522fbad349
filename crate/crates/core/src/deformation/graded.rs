use serde::Serialize;

use crate::algebra::LieLaw;
use crate::cohomology::Grading;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{self, Scalar};

use super::family::{contract, ScalingFamily};

/// The associated graded algebra of a nilpotent law, with the contracting family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedNilpotent {
    pub gr: LieLaw,
    /// Weight of each adapted basis vector (`i` on `V_i`).
    pub weights: Vec<i64>,
    /// Adapted basis, as columns in the input coordinates.
    pub basis: Matrix,
    /// `φ_t = t^i` on `V_i`; contracts the input onto `gr`.
    pub family: ScalingFamily,
    pub grading: Grading,
}

fn pivot(v: &[Scalar]) -> usize {
    v.iter().position(|x| !num_traits::Zero::is_zero(x)).unwrap_or(v.len())
}

/// `gr(N) = ⊕ C^i/C^{i+1}` built on complements `V_i ⊕ C^{i+1} = C^i`.
///
/// Complements prefer coordinate vectors and the adapted basis keeps the
/// input order, so an already graded law comes back unchanged.
pub fn graded_nilpotent(n: &LieLaw) -> Result<GradedNilpotent> {
    let series = n.lower_central_series();
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(Error::NotNilpotent);
    }
    let mut vecs: Vec<(Vec<Scalar>, i64)> = Vec::new();
    for (i, pair) in series.windows(2).enumerate() {
        for v in pair[0].complement_of(&pair[1]) {
            vecs.push((v, i as i64 + 1));
        }
    }
    vecs.sort_by_key(|(v, _)| pivot(v));
    let cols: Vec<Vec<Scalar>> = vecs.iter().map(|(v, _)| v.clone()).collect();
    let weights: Vec<i64> = vecs.iter().map(|(_, w)| *w).collect();
    let dim = n.dim();
    let basis = if dim == 0 { Matrix::zeros(0, 0) } else { Matrix::from_cols(&cols)? };
    let local = n.in_basis(&basis)?;
    let kept = local.constants().into_iter().filter(|(i, j, k, _)| weights[*i] + weights[*j] == weights[*k]);
    let gr = LieLaw::from_constants(n.labels().to_vec(), kept)?;
    let w: Vec<Scalar> = weights.iter().map(|&x| scalar::int(x)).collect();
    let family = if basis == Matrix::identity(dim) { ScalingFamily::diagonal(w) } else { ScalingFamily::in_basis(&basis, w)? };
    let limit = contract(n, &family)?;
    if limit != gr {
        return Err(Error::Invalid("graded family does not reproduce gr".into()));
    }
    let top = weights.iter().copied().max().unwrap_or(0);
    let parts: Vec<(i64, Subspace)> = (1..=top)
        .map(|i| {
            let idx: Vec<usize> = weights.iter().enumerate().filter(|(_, w)| **w == i).map(|(p, _)| p).collect();
            (i, Subspace::coordinate(dim, &idx))
        })
        .collect();
    let grading = Grading::new(&gr, parts)?;
    Ok(GradedNilpotent { gr, weights, basis, family, grading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn listed_gradings() {
        let heis = catalog("heis(3)").unwrap();
        assert_eq!(graded_nilpotent(&heis).unwrap().gr, heis);
        let l67 = catalog("l_6_7").unwrap();
        for name in ["l_6_6", "l_6_13"] {
            let g = graded_nilpotent(&catalog(name).unwrap()).unwrap();
            assert_eq!(g.gr, l67, "{name}");
            assert_eq!(g.weights, vec![1, 1, 2, 3, 4, 1]);
        }
    }

    #[test]
    fn idempotent_and_rejects_solvable() {
        for name in ["l_6_11", "l_6_12", "l_4_3", "heis(5)"] {
            let g = graded_nilpotent(&catalog(name).unwrap()).unwrap().gr;
            assert_eq!(graded_nilpotent(&g).unwrap().gr, g);
        }
        assert!(matches!(graded_nilpotent(&catalog("aff").unwrap()), Err(Error::NotNilpotent)));
    }

    #[test]
    fn non_coordinate_filtration() {
        let l = catalog("l_6_6").unwrap();
        let p = Matrix::from_i64(&[
            &[1, 0, 0, 0, 0, 1],
            &[0, 1, 0, 0, 0, 0],
            &[1, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 2, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        let g = graded_nilpotent(&l.basis_change(&p).unwrap()).unwrap();
        assert_eq!(g.gr.fingerprint(), catalog("l_6_7").unwrap().fingerprint());
    }
}
