use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieLaw;
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseMatrix;
use crate::linalg::{unit, LinearMap, Matrix, Subspace};
use crate::scalar::Scalar;

/// Lower central and derived series, each until it stabilizes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructuralSeries {
    pub lower_central: Vec<Subspace>,
    pub derived: Vec<Subspace>,
}

impl StructuralSeries {
    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central.iter().map(Subspace::dim).collect()
    }

    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived.iter().map(Subspace::dim).collect()
    }
}

/// Derivation algebra data; matrices are flattened row-major into `n²` space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Derivations {
    pub der: Subspace,
    pub inn: Subspace,
    pub outer_dim: usize,
}

impl Derivations {
    pub fn der_matrices(&self) -> Vec<Matrix> {
        let n = (self.der.ambient() as f64).sqrt().round() as usize;
        self.der.basis().iter().map(|v| unflatten(v, n)).collect()
    }
}

pub fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

pub fn unflatten(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_rows(v.chunks(n).map(<[Scalar]>::to_vec).collect()).expect("square chunks")
}

impl LieLaw {
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut out = vec![full.clone()];
        for _ in 0..2 * n {
            let next = self.bracket_spaces(&full, out.last().expect("nonempty"));
            let done = next == *out.last().expect("nonempty");
            if done {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let mut out = vec![Subspace::full(n)];
        for _ in 0..2 * n {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if next == *last {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn structural_series(&self) -> StructuralSeries {
        StructuralSeries { lower_central: self.lower_central_series(), derived: self.derived_series() }
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_spaces(&full, &full)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    /// Stable term of the lower central series.
    pub fn exponential_radical(&self) -> Subspace {
        self.lower_central_series().pop().expect("nonempty")
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (j, m): coefficient of e_m in [x, e_j] = Σ_i x_i c_{ij}^m.
        let mut trip = Vec::new();
        for j in 0..n {
            for i in 0..n {
                for (m, c) in self.basis_bracket(i, j) {
                    trip.push((j * n + m, i, c.clone()));
                }
            }
        }
        let m = SparseMatrix::from_triplets(n * n, n, trip);
        let vs: Vec<Vec<Scalar>> = m.kernel().iter().map(|v| crate::linalg::sparse::to_dense(v, n)).collect();
        Subspace::span(n, &vs).expect("kernel vectors have length n")
    }

    /// Centralizer of a subspace: `{x : [x, s] = 0 for all s}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for v in s.basis() {
            // x ↦ [x, v] = −ad(v) x
            rows.extend(self.ad(v).expect("dim").to_rows());
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        let k = Matrix::from_rows(rows).expect("rows of length n").kernel();
        Subspace::span(n, &k).expect("length n")
    }

    /// `{x : [x, s] ∈ s for all s ∈ s}`.
    pub fn normalizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        // Annihilator rows a with a·s = 0 for all s ∈ s.
        let ann: Vec<Vec<Scalar>> = if s.is_zero() {
            Matrix::identity(n).to_rows()
        } else {
            Matrix::from_rows(s.basis().to_vec()).expect("rows").kernel()
        };
        if ann.is_empty() {
            return Subspace::full(n);
        }
        let a = Matrix::from_rows(ann).expect("rows");
        let mut rows = Vec::new();
        for v in s.basis() {
            rows.extend(a.mul(&self.ad(v).expect("dim")).expect("shapes").to_rows());
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::span(n, &Matrix::from_rows(rows).expect("rows").kernel()).expect("length n")
    }

    /// Solves `D[x,y] = [Dx,y] + [x,Dy]`; returns Der, Inn and the outer dimension.
    pub fn derivations(&self) -> Derivations {
        let n = self.dim();
        let idx = |a: usize, b: usize| a * n + b; // D_{ab}: coefficient of e_a in D e_b
        let mut trip = Vec::new();
        let mut row = 0;
        for i in 0..n {
            for j in i + 1..n {
                for m in 0..n {
                    // Σ_k c_ij^k D_mk
                    for (k, c) in self.basis_bracket(i, j) {
                        trip.push((row, idx(m, *k), c.clone()));
                    }
                    // − Σ_a D_ai c_aj^m − Σ_a D_aj c_ia^m
                    for a in 0..n {
                        let c1 = self.constant(a, j, m);
                        if !c1.is_zero() {
                            trip.push((row, idx(a, i), -c1));
                        }
                        let c2 = self.constant(i, a, m);
                        if !c2.is_zero() {
                            trip.push((row, idx(a, j), -c2));
                        }
                    }
                    row += 1;
                }
            }
        }
        let sys = SparseMatrix::from_triplets(row, n * n, trip);
        let der_vecs: Vec<Vec<Scalar>> = sys.kernel().iter().map(|v| crate::linalg::sparse::to_dense(v, n * n)).collect();
        let der = Subspace::span(n * n, &der_vecs).expect("length n²");
        let inn_vecs: Vec<Vec<Scalar>> = (0..n).map(|i| flatten(&self.ad_basis(i))).collect();
        let inn = Subspace::span(n * n, &inn_vecs).expect("length n²");
        let outer_dim = der.dim() - inn.dim();
        Derivations { der, inn, outer_dim }
    }

    pub fn is_derivation(&self, d: &LinearMap) -> bool {
        self.derivation_defect(d).is_none()
    }

    /// First pair `(i, j)` (1-based) where the Leibniz rule fails.
    pub fn derivation_defect(&self, d: &LinearMap) -> Option<(usize, usize)> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Some((0, 0));
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ei, ej) = (unit(n, i), unit(n, j));
                let lhs = d.mul_vec(&self.bracket(&ei, &ej).expect("dim")).expect("dim");
                let a = self.bracket(&d.column(i), &ej).expect("dim");
                let b = self.bracket(&ei, &d.column(j)).expect("dim");
                if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (x, y))| *l != x + y) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// `N ⋊_α ℝ`: appends a generator `A` with `[A, x] = αx`.
    pub fn semidirect_rank_one(&self, alpha: &LinearMap) -> Result<LieLaw> {
        let n = self.dim();
        if alpha.rows() != n || alpha.cols() != n {
            return Err(Error::Dimension { expected: n, got: alpha.rows() });
        }
        if let Some((i, j)) = self.derivation_defect(alpha) {
            return Err(Error::NotDerivation(format!("Leibniz rule fails on basis pair ({i},{j})")));
        }
        let mut labels = self.labels().to_vec();
        labels.push(fresh_label(&labels, "A"));
        let mut entries: Vec<(usize, usize, usize, Scalar)> = self.constants();
        for j in 0..n {
            for (k, c) in alpha.column(j).into_iter().enumerate() {
                if !c.is_zero() {
                    // [e_j, A] = −α e_j
                    entries.push((j, n, k, -c));
                }
            }
        }
        LieLaw::from_constants(labels, entries)
    }

    pub fn direct_sum(&self, other: &LieLaw) -> LieLaw {
        let n = self.dim();
        let mut labels = self.labels().to_vec();
        for l in other.labels() {
            labels.push(fresh_label(&labels, l));
        }
        let mut entries = self.constants();
        entries.extend(other.constants().into_iter().map(|(i, j, k, c)| (i + n, j + n, k + n, c)));
        LieLaw::from_constants(labels, entries).expect("block entries are in range")
    }

    /// Restriction of the bracket to a subalgebra, in the coordinates of its echelon basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieLaw> {
        let b = s.basis();
        let mut entries = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let w = self.bracket(&b[i], &b[j])?;
                let c = s.coordinates(&w).ok_or_else(|| Error::Invalid("subspace is not a subalgebra".into()))?;
                for (k, x) in c.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((i, j, k, x));
                    }
                }
            }
        }
        LieLaw::from_constants(crate::algebra::default_labels(b.len()), entries)
    }

    /// Matrix of `ad(x)` restricted to an `ad(x)`-invariant subspace, in its echelon basis.
    pub fn ad_restricted(&self, x: &[Scalar], s: &Subspace) -> Result<Matrix> {
        restrict(&self.ad(x)?, s)
    }
}

/// Restriction of `m` to an invariant subspace, in that subspace's echelon basis.
pub fn restrict(m: &Matrix, s: &Subspace) -> Result<Matrix> {
    let cols = s
        .basis()
        .iter()
        .map(|v| {
            let w = m.mul_vec(v)?;
            s.coordinates(&w).ok_or_else(|| Error::Invalid("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    if cols.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_cols(&cols)
}

/// Induced map on `big / small` for an `m`-invariant flag, in the basis
/// given by `big.complement_of(small)`.
pub fn induced_on_quotient(m: &Matrix, big: &Subspace, small: &Subspace) -> Result<(Matrix, Vec<Vec<Scalar>>)> {
    let comp = big.complement_of(small);
    let mut basis: Vec<Vec<Scalar>> = comp.clone();
    basis.extend(small.basis().iter().cloned());
    let q = Matrix::from_cols(&basis)?;
    let k = comp.len();
    let mut cols = Vec::new();
    for v in &comp {
        let w = m.mul_vec(v)?;
        // Solve q·c = w; the first k coordinates give the quotient image.
        let sol = solve(&q, &w).ok_or_else(|| Error::Invalid("flag is not invariant".into()))?;
        cols.push(sol[..k].to_vec());
    }
    if cols.is_empty() {
        return Ok((Matrix::zeros(0, 0), comp));
    }
    Ok((Matrix::from_cols(&cols)?, comp))
}

/// Unique or any solution of `a·x = b`, if consistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut rows = a.to_rows();
    for (r, x) in rows.iter_mut().zip(b) {
        r.push(x.clone());
    }
    let (r, pivots) = Matrix::from_rows(rows).ok()?.rref();
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, n)].clone();
    }
    Some(x)
}

fn fresh_label(existing: &[String], want: &str) -> String {
    if !existing.iter().any(|l| l == want) {
        return want.to_string();
    }
    (1..).map(|i| format!("{want}{i}")).find(|l| !existing.contains(l)).expect("infinite supply")
}
