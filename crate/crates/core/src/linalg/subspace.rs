use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Subspace of `ℚⁿ` stored by its reduced row echelon basis.
///
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    #[serde(with = "rows_serde")]
    basis: Vec<Vec<Scalar>>,
}

mod rows_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(crate::scalar::format).collect()).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Scalar>>, D::Error> {
        use serde::de::Error as _;
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter()
            .map(|r| r.iter().map(|s| crate::scalar::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::identity(ambient).to_rows()).expect("square identity")
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Dimension { expected: ambient, got: v.len() });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (r, pivots) = Matrix::from_rows(vectors.to_vec())?.rref();
        Ok(Subspace { ambient, basis: (0..pivots.len()).map(|i| r.row(i)).collect() })
    }

    /// Span of selected coordinate vectors `e_i`.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Scalar>> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
    }

    /// Residual of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (o, r) in out.iter_mut().zip(row) {
                    *o -= r * &f;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs).expect("same ambient")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // Solve Σ a_i u_i = Σ b_j v_j.
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_cols(&cols).expect("same ambient");
        let vs: Vec<Vec<Scalar>> = m
            .kernel()
            .iter()
            .map(|k| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (a, u) in k.iter().zip(&self.basis) {
                    for (o, x) in v.iter_mut().zip(u) {
                        *o += a * x;
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vs).expect("same ambient")
    }

    /// Vectors of `self`'s echelon basis that extend a basis of `sub` to one of `self`.
    ///
    /// When `self` is spanned by coordinate vectors, so is the complement.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vec<Scalar>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                acc = acc.sum(&Self::span(self.ambient, std::slice::from_ref(v)).expect("same ambient"));
                out.push(v.clone());
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis (read off at the pivots).
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v).then(|| self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        let vs = self.basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Self::span(m.rows(), &vs)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = crate::scalar::one();
    v
}
