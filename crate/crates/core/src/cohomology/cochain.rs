use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Coefficient module of a cochain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Trivial,
    Adjoint,
}

/// Basis cochain `e_k ⊗ e^{i₁}∧…∧e^{i_q}` (0-based), `k` absent for trivial coefficients.
///
/// Ordering is lexicographic on the tuple, then on `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CochainIndex {
    pub indices: Vec<usize>,
    pub k: Option<usize>,
}

impl CochainIndex {
    pub fn trivial(indices: Vec<usize>) -> Self {
        CochainIndex { indices, k: None }
    }

    pub fn adjoint(k: usize, indices: Vec<usize>) -> Self {
        CochainIndex { indices, k: Some(k) }
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }
}

/// All strictly increasing `q`-tuples in `0..n`, lexicographically.
pub(crate) fn tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    rec(0, n, q, &mut cur, &mut out);
    out
}

/// Ordered basis of `Λ^q(ℚⁿ)*` or `Λ^q(ℚⁿ)* ⊗ ℚⁿ`.
#[derive(Clone, Debug)]
pub struct CochainBasis {
    n: usize,
    q: usize,
    module: Module,
    tuples: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

impl CochainBasis {
    pub fn new(n: usize, q: usize, module: Module) -> Self {
        let tuples = if q <= n { tuples(n, q) } else { Vec::new() };
        let rank = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        CochainBasis { n, q, module, tuples, rank }
    }

    pub fn dim(&self) -> usize {
        match self.module {
            Module::Trivial => self.tuples.len(),
            Module::Adjoint => self.tuples.len() * self.n,
        }
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub(crate) fn tuple_list(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub(crate) fn tuple_rank(&self, t: &[usize]) -> Option<usize> {
        self.rank.get(t).copied()
    }

    /// Position of a basis index, if it belongs to this basis.
    pub fn position(&self, idx: &CochainIndex) -> Option<usize> {
        let r = self.tuple_rank(&idx.indices)?;
        match (self.module, idx.k) {
            (Module::Trivial, None) => Some(r),
            (Module::Adjoint, Some(k)) if k < self.n => Some(r * self.n + k),
            _ => None,
        }
    }

    pub fn index(&self, pos: usize) -> CochainIndex {
        match self.module {
            Module::Trivial => CochainIndex::trivial(self.tuples[pos].clone()),
            Module::Adjoint => CochainIndex::adjoint(pos % self.n, self.tuples[pos / self.n].clone()),
        }
    }

    pub fn indices(&self) -> Vec<CochainIndex> {
        (0..self.dim()).map(|p| self.index(p)).collect()
    }
}

/// A cochain with exact coefficients, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    module: Module,
    degree: usize,
    terms: BTreeMap<CochainIndex, Scalar>,
}

impl Cochain {
    pub fn zero(module: Module, degree: usize) -> Self {
        Cochain { module, degree, terms: BTreeMap::new() }
    }

    /// Builds from possibly unsorted index tuples; reordering applies the permutation sign.
    pub fn from_terms(module: Module, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, Option<usize>, Scalar)>) -> Result<Self> {
        let mut c = Self::zero(module, degree);
        for (idx, k, v) in terms {
            if idx.len() != degree {
                return Err(Error::Cochain(format!("term {idx:?} does not have degree {degree}")));
            }
            if k.is_some() != (module == Module::Adjoint) {
                return Err(Error::Cochain("value index present iff the module is adjoint".into()));
            }
            let Some((sorted, sign)) = sort_with_sign(&idx) else { continue };
            c.add_term(CochainIndex { indices: sorted, k }, if sign { -v } else { v });
        }
        Ok(c)
    }

    /// `e^{i₁…i_q}` with 0-based indices.
    pub fn basis_trivial(indices: &[usize]) -> Self {
        Self::from_terms(Module::Trivial, indices.len(), [(indices.to_vec(), None, scalar::one())]).expect("consistent")
    }

    /// `e_k ⊗ e^{i₁…i_q}` with 0-based indices.
    pub fn basis_adjoint(k: usize, indices: &[usize]) -> Self {
        Self::from_terms(Module::Adjoint, indices.len(), [(indices.to_vec(), Some(k), scalar::one())]).expect("consistent")
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CochainIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &CochainIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, idx: CochainIndex, v: Scalar) {
        let e = self.terms.entry(idx.clone()).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    fn check_same(&self, o: &Cochain) -> Result<()> {
        if self.module != o.module || self.degree != o.degree {
            return Err(Error::Cochain(format!(
                "cannot combine {:?} degree {} with {:?} degree {}",
                self.module, self.degree, o.module, o.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (i, v) in &o.terms {
            out.add_term(i.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Cochain) -> Result<Cochain> {
        self.add(&o.scale(&-scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        if c.is_zero() {
            return Self::zero(self.module, self.degree);
        }
        Cochain { module: self.module, degree: self.degree, terms: self.terms.iter().map(|(i, v)| (i.clone(), v * c)).collect() }
    }

    /// Coordinates in `basis`; errors when a term is out of range.
    pub fn to_vector(&self, basis: &CochainBasis) -> Result<SparseVec> {
        if basis.module() != self.module || basis.degree() != self.degree {
            return Err(Error::Cochain("cochain does not match the basis".into()));
        }
        let mut out: Vec<(usize, Scalar)> = self
            .terms
            .iter()
            .map(|(i, v)| {
                basis
                    .position(i)
                    .map(|p| (p, v.clone()))
                    .ok_or_else(|| Error::Cochain(format!("index {i:?} out of range for dimension {}", basis.algebra_dim())))
            })
            .collect::<Result<_>>()?;
        out.sort_by_key(|e| e.0);
        Ok(out)
    }

    pub fn from_vector(basis: &CochainBasis, v: &SparseVec) -> Cochain {
        let mut c = Self::zero(basis.module(), basis.degree());
        for (p, x) in v {
            c.add_term(basis.index(*p), x.clone());
        }
        c
    }

    /// Value on arguments `vs` (length `degree`, each of length `n`); length 1 for trivial.
    pub fn eval(&self, n: usize, vs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let width = if self.module == Module::Adjoint { n } else { 1 };
        let mut out = vec![Scalar::zero(); width];
        for (idx, c) in &self.terms {
            let minor = Matrix::from_rows(vs.iter().map(|v| idx.indices.iter().map(|&i| v[i].clone()).collect()).collect())
                .map(|m| det(&m))
                .unwrap_or_else(|_| scalar::one());
            if minor.is_zero() {
                continue;
            }
            out[idx.k.unwrap_or(0)] += c * minor;
        }
        out
    }

    /// Pullback along the basis change whose columns `q` are the new basis vectors:
    /// the result expresses the same cochain in the new basis.
    pub fn in_basis(&self, q: &Matrix) -> Result<Cochain> {
        let n = q.rows();
        let q_inv = q.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| q.column(j)).collect();
        let mut out = Self::zero(self.module, self.degree);
        for t in tuples(n, self.degree) {
            let args: Vec<Vec<Scalar>> = t.iter().map(|&j| cols[j].clone()).collect();
            let val = self.eval(n, &args);
            match self.module {
                Module::Trivial => {
                    if !val[0].is_zero() {
                        out.add_term(CochainIndex::trivial(t), val[0].clone());
                    }
                }
                Module::Adjoint => {
                    for (k, x) in q_inv.mul_vec(&val)?.into_iter().enumerate() {
                        if !x.is_zero() {
                            out.add_term(CochainIndex::adjoint(k, t.clone()), x);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Sorts `idx`; returns `None` on a repeated index, else the sorted tuple and whether the sign flips.
pub(crate) fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Exact determinant by elimination.
pub(crate) fn det(m: &Matrix) -> Scalar {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut d = scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Scalar::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let x = &f * &a[c][k];
                a[r][k] -= x;
            }
        }
    }
    d
}

impl fmt::Display for Cochain {
    /// Writes `c·X_k^{i…}` terms with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let ids: Vec<String> = idx.indices.iter().map(|i| (i + 1).to_string()).collect();
            match idx.k {
                Some(k) => write!(f, "{}*X{}^{{{}}}", scalar::format(c), k + 1, ids.join(","))?,
                None => write!(f, "{}*X^{{{}}}", scalar::format(c), ids.join(","))?,
            }
        }
        Ok(())
    }
}

/// JSON term: 1-based `indices`, optional 1-based value index `k`, rational `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTerm {
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(with = "scalar::serde_scalar")]
    pub c: Scalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainJson {
    module: Module,
    degree: usize,
    terms: Vec<CochainTerm>,
}

impl Cochain {
    pub fn to_terms(&self) -> Vec<CochainTerm> {
        self.terms
            .iter()
            .map(|(i, c)| CochainTerm { indices: i.indices.iter().map(|x| x + 1).collect(), k: i.k.map(|k| k + 1), c: c.clone() })
            .collect()
    }

    pub fn from_json_terms(module: Module, degree: usize, terms: &[CochainTerm]) -> Result<Cochain> {
        let conv = |x: usize| x.checked_sub(1).ok_or_else(|| Error::Cochain("indices are 1-based".into()));
        let parsed = terms
            .iter()
            .map(|t| {
                let idx = t.indices.iter().map(|&x| conv(x)).collect::<Result<Vec<_>>>()?;
                let k = t.k.map(conv).transpose()?;
                Ok((idx, k, t.c.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(module, degree, parsed)
    }
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CochainJson { module: self.module, degree: self.degree, terms: self.to_terms() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CochainJson::deserialize(d)?;
        Cochain::from_json_terms(j.module, j.degree, &j.terms).map_err(serde::de::Error::custom)
    }
}
