//! Sparse exact elimination.
//!
//! Rows are kept as primitive integer vectors: every row operation is the
//! fraction-free combination `a·u − b·v` followed by division by the content.
//! Rationals only appear when a kernel or a preimage is read off.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Row-major sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Builds from unsorted triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in entries {
            debug_assert!(r < nrows && c < ncols);
            *acc[r].entry(c).or_insert_with(Scalar::zero) += v;
        }
        let rows = acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|p| self.rows[r][p].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "sparse product dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        *acc.entry(*j).or_insert_with(Scalar::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let mut acc = Scalar::zero();
                for (j, a) in row {
                    if let Some(x) = dense.get(j) {
                        acc += a * *x;
                    }
                }
                (!acc.is_zero()).then_some((i, acc))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        // Eliminating the shorter side is cheaper; rank is the same.
        if self.nrows <= self.ncols {
            for r in &self.rows {
                e.insert(r);
            }
        } else {
            let mut e2 = Echelon::new(self.nrows);
            for c in self.columns() {
                e2.insert(&c);
            }
            return e2.rank();
        }
        e.rank()
    }

    /// Null space basis, in reduced form: one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r);
        }
        e.null_space()
    }
}

#[derive(Clone, Debug)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    /// Integer multiple of `v` with coprime entries; also returns the factor.
    fn primitive_of(v: &SparseVec) -> (IntRow, Scalar) {
        let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let ints: Vec<(usize, BigInt)> = v.iter().map(|(i, x)| (*i, (x * &lcm).to_integer())).collect();
        let mut row = IntRow(ints);
        let g = row.content();
        row.divide(&g);
        (row, Scalar::new(lcm, g))
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, x) in &self.0 {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    fn divide(&mut self, g: &BigInt) {
        if !g.is_one() {
            for (_, x) in &mut self.0 {
                *x /= g;
            }
        }
    }

    fn lead(&self) -> Option<&(usize, BigInt)> {
        self.0.first()
    }

    fn get(&self, c: usize) -> Option<&BigInt> {
        self.0.binary_search_by_key(&c, |e| e.0).ok().map(|p| &self.0[p].1)
    }

    /// `a·self − b·other`, made primitive; returns the content removed.
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> (IntRow, BigInt) {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map_or(usize::MAX, |e| e.0);
            let cj = other.0.get(j).map_or(usize::MAX, |e| e.0);
            let (c, v) = if ci < cj {
                i += 1;
                (ci, a * &self.0[i - 1].1)
            } else if cj < ci {
                j += 1;
                (cj, -(b * &other.0[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (ci, a * &self.0[i - 1].1 - b * &other.0[j - 1].1)
            };
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        let mut row = IntRow(out);
        let g = row.content();
        row.divide(&g);
        (row, g)
    }

    fn to_rational(&self) -> SparseVec {
        self.0.iter().map(|(i, x)| (*i, Scalar::from_integer(x.clone()))).collect()
    }
}

/// Incremental row echelon basis of a span, with optional preimage tracking.
///
/// When vectors are inserted with a witness `w` (meaning `v = M·w` for some
/// fixed map `M`), every stored row keeps its own witness, so membership
/// queries can return a preimage.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<IntRow>,
    witnesses: Vec<Option<SparseVec>>,
    pivot_row: BTreeMap<usize, usize>,
}

/// Outcome of reducing a vector against an [`Echelon`].
struct Reduction {
    residual: IntRow,
    /// `residual = scale·v − Σ coeff_r · row_r`.
    scale: Scalar,
    coeffs: BTreeMap<usize, Scalar>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), witnesses: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec, track: bool) -> Reduction {
        let (mut cur, f) = IntRow::primitive_of(v);
        let mut scale = f;
        let mut coeffs: BTreeMap<usize, Scalar> = BTreeMap::new();
        // Reduce every entry sitting in a pivot column, left to right.
        let mut from = 0usize;
        loop {
            let hit = cur.0.iter().find(|(c, _)| *c >= from && self.pivot_row.contains_key(c)).cloned();
            let Some((c, b)) = hit else { break };
            let r = self.pivot_row[&c];
            let a = self.rows[r].lead().expect("stored rows are nonzero").1.clone();
            let (next, g) = cur.combine(&a, &self.rows[r], &b);
            if track {
                let ga = Scalar::new(a.clone(), g.clone());
                for x in coeffs.values_mut() {
                    *x *= &ga;
                }
                *coeffs.entry(r).or_insert_with(Scalar::zero) += Scalar::new(b, g.clone());
                scale *= ga;
            }
            cur = next;
            from = c + 1;
        }
        Reduction { residual: cur, scale, coeffs }
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v, false);
        self.push(red.residual, None)
    }

    /// Inserts `v = M·w`, remembering `w`.
    pub fn insert_with_witness(&mut self, v: &SparseVec, w: SparseVec) -> bool {
        let red = self.reduce(v, true);
        if red.residual.0.is_empty() {
            return false;
        }
        // residual = scale·v − Σ c_r row_r  ⇒  witness = scale·w − Σ c_r w_r
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in &w {
            *acc.entry(*i).or_insert_with(Scalar::zero) += x * &red.scale;
        }
        for (r, c) in &red.coeffs {
            if let Some(wr) = &self.witnesses[*r] {
                for (i, x) in wr {
                    *acc.entry(*i).or_insert_with(Scalar::zero) -= x * c;
                }
            }
        }
        let wit = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        self.push(red.residual, Some(wit))
    }

    fn push(&mut self, row: IntRow, witness: Option<SparseVec>) -> bool {
        let Some(&(p, _)) = row.lead() else { return false };
        // Rows are reduced at pivot columns, so the lead is never a pivot.
        debug_assert!(!self.pivot_row.contains_key(&p));
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        self.witnesses.push(witness);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v, false).residual.0.is_empty()
    }

    /// For a span built with witnesses, returns `w` with `M·w = v` if `v` lies in it.
    pub fn preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(v, true);
        if !red.residual.0.is_empty() {
            return None;
        }
        // 0 = scale·v − Σ c_r row_r  ⇒  v = Σ (c_r/scale) row_r
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (r, c) in &red.coeffs {
            let wr = self.witnesses[*r].as_ref()?;
            let f = c / &red.scale;
            for (i, x) in wr {
                *acc.entry(*i).or_insert_with(Scalar::zero) += x * &f;
            }
        }
        Some(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    /// Fully reduced rows with unit pivots, sorted by pivot.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = self.pivot_row.values().copied().collect();
        order.sort_by_key(|&r| self.rows[r].lead().map(|e| e.0));
        let mut reduced: Vec<IntRow> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = reduced.iter().map(|r| r.lead().expect("nonzero").0).collect();
        for i in (0..reduced.len()).rev() {
            for j in i + 1..reduced.len() {
                let Some(b) = reduced[i].get(pivots[j]).cloned() else { continue };
                let a = reduced[j].lead().expect("nonzero").1.clone();
                let (next, _) = reduced[i].combine(&a, &reduced[j], &b);
                reduced[i] = next;
            }
        }
        reduced
            .iter()
            .map(|r| {
                let lead = Scalar::from_integer(r.lead().expect("nonzero").1.clone());
                r.to_rational().into_iter().map(|(i, x)| (i, x / &lead)).collect()
            })
            .collect()
    }

    /// Basis of `{x : ⟨row, x⟩ = 0 for all rows}`.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let rref = self.rref_rows();
        let pivots: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (row, &p) in rref.iter().zip(&pivots) {
            for (c, x) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, -x.clone()));
            }
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        (0..self.ncols)
            .filter(|c| !pivot_set.contains(c))
            .map(|f| {
                let mut v: Vec<(usize, Scalar)> = by_free.remove(&f).unwrap_or_default();
                v.push((f, Scalar::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Dense view of a sparse vector.
pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `Σ c_i v_i` over sparse vectors.
pub fn combine(terms: &[(Scalar, &SparseVec)]) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in terms {
        for (i, x) in *v {
            *acc.entry(*i).or_insert_with(Scalar::zero) += c * x;
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn is_negative_lead(v: &SparseVec) -> bool {
    v.first().is_some_and(|(_, x)| x.is_negative())
}
