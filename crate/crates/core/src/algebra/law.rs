use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{self, Scalar};

/// Structure constants of a finite-dimensional Lie algebra over ℚ.
///
/// Internally 0-based with the full antisymmetric table cached; the JSON
/// form stores only `i < j` entries, 1-based. Equality compares constants
/// and ignores basis labels.
#[derive(Clone, Debug)]
pub struct LieLaw {
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
}

impl PartialEq for LieLaw {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for LieLaw {}

/// Report of [`LieLaw::check_jacobi`]; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum JacobiReport {
    Ok,
    Violation {
        triple: (usize, usize, usize),
        #[serde(with = "scalar::serde_scalar_vec")]
        residual: Vec<Scalar>,
    },
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, JacobiReport::Ok)
    }
}

/// Accumulates brackets in either index order.
#[derive(Clone, Debug)]
pub struct LawBuilder {
    labels: Vec<String>,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl LawBuilder {
    /// Adds `c·e_k` to `[e_i, e_j]` (0-based, any order).
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        assert!(i != j, "diagonal bracket");
        let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        *self.entries.entry((a, b, k)).or_insert_with(Scalar::zero) += c;
        self
    }

    pub fn add_i64(&mut self, i: usize, j: usize, k: usize, c: i64) -> &mut Self {
        self.add(i, j, k, scalar::int(c))
    }

    pub fn build(&self) -> LieLaw {
        LieLaw::from_constants(self.labels.clone(), self.entries.iter().map(|(&(i, j, k), c)| (i, j, k, c.clone())))
            .expect("builder keeps i < j and in-range indices")
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

impl LieLaw {
    /// From 0-based constants `(i, j, k, c)` with `i < j`; duplicates are rejected.
    pub fn from_constants(labels: Vec<String>, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        let n = labels.len();
        let mut acc: Vec<Vec<BTreeMap<usize, Scalar>>> = vec![vec![BTreeMap::new(); n]; n];
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexRange(format!("({},{},{}) with dim {n}", i + 1, j + 1, k + 1)));
            }
            if i >= j {
                return Err(Error::IndexOrder { i: i + 1, j: j + 1, k: k + 1 });
            }
            if acc[i][j].insert(k, c).is_some() {
                return Err(Error::Parse(format!("duplicate bracket entry ({},{},{})", i + 1, j + 1, k + 1)));
            }
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v: SparseVec = acc[i][j].iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
                table[j][i] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
                table[i][j] = v;
            }
        }
        Ok(LieLaw { labels, table })
    }

    pub fn builder(labels: Vec<String>) -> LawBuilder {
        LawBuilder { labels, entries: BTreeMap::new() }
    }

    pub fn abelian(n: usize) -> Self {
        Self::from_constants(default_labels(n), []).expect("no entries")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// `[e_i, e_j]` as a sparse vector (0-based).
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Structure constant `c_{ij}^k` (0-based, any order).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j]
            .binary_search_by_key(&k, |e| e.0)
            .map(|p| self.table[i][j][p].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    /// Nonzero constants with `i < j`, lexicographic, 0-based.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|r| r.iter().all(Vec::is_empty))
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::Dimension { expected: n, got: w.len() });
            }
        }
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[k.to_owned()] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`: column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        let cols = (0..n).map(|j| self.bracket(x, &crate::linalg::unit(n, j))).collect::<Result<Vec<_>>>()?;
        Matrix::from_cols(&cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&crate::linalg::unit(self.dim(), i)).expect("in range")
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r = self.jacobiator(i, j, k);
                    if r.iter().any(|x| !x.is_zero()) {
                        return JacobiReport::Violation { triple: (i + 1, j + 1, k + 1), residual: r };
                    }
                }
            }
        }
        JacobiReport::Ok
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, x) in &self.table[a][b] {
                for (p, y) in &self.table[*m][c] {
                    out[*p] += x * y;
                }
            }
        }
        out
    }

    /// Errors with the first failing triple unless the Jacobi identity holds.
    pub fn validated(self) -> Result<Self> {
        match self.check_jacobi() {
            JacobiReport::Ok => Ok(self),
            JacobiReport::Violation { triple: (i, j, k), .. } => Err(Error::Jacobi(i, j, k)),
        }
    }

    /// `P·λ`: the law `(x, y) ↦ P[P⁻¹x, P⁻¹y]`.
    pub fn basis_change(&self, p: &Matrix) -> Result<LieLaw> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::Dimension { expected: n, got: p.rows() });
        }
        let inv = p.inverse()?;
        self.transport(p, &inv)
    }

    /// The same algebra written in the basis given by the columns of `q`.
    pub fn in_basis(&self, q: &Matrix) -> Result<LieLaw> {
        let inv = q.inverse()?;
        self.transport(&inv, q)
    }

    fn transport(&self, p: &Matrix, p_inv: &Matrix) -> Result<LieLaw> {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| p_inv.column(j)).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = p.mul_vec(&self.bracket(&cols[i], &cols[j])?)?;
                for (k, c) in w.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        LieLaw::from_constants(self.labels.clone(), entries)
    }

    /// Span of `[u, v]` over basis vectors of `a` and `b`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                vs.push(self.bracket(u, v).expect("ambient matches dim"));
            }
        }
        Subspace::span(self.dim(), &vs).expect("ambient matches dim")
    }

    /// Bracket restricted to a sparse coordinate form, used by cochain code.
    pub(crate) fn table(&self) -> &Vec<Vec<SparseVec>> {
        &self.table
    }

    /// Law from an antisymmetric bilinear table given as `i < j` sparse values.
    pub(crate) fn from_pair_values(labels: Vec<String>, values: &BTreeMap<(usize, usize), SparseVec>) -> Result<Self> {
        let entries = values.iter().flat_map(|(&(i, j), v)| v.iter().map(move |(k, c)| (i, j, *k, c.clone())));
        Self::from_constants(labels, entries)
    }

    /// Entrywise sum of constants (used for `μ + ω`).
    pub fn plus(&self, other: &LieLaw) -> Result<LieLaw> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: other.dim() });
        }
        let mut acc: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = sparse::combine(&[(scalar::one(), &self.table[i][j]), (scalar::one(), &other.table[i][j])]);
                if !v.is_empty() {
                    acc.insert((i, j), v);
                }
            }
        }
        Self::from_pair_values(self.labels.clone(), &acc)
    }

    pub fn to_json(&self) -> LawJson {
        LawJson {
            dim: self.dim(),
            basis: self.labels.clone(),
            brackets: self
                .constants()
                .into_iter()
                .map(|(i, j, k, c)| BracketEntry { i: i + 1, j: j + 1, k: k + 1, c: scalar::format(&c) })
                .collect(),
        }
    }

    /// Parses the interchange JSON; does not check Jacobi.
    pub fn from_json(j: &LawJson) -> Result<Self> {
        if j.basis.len() != j.dim {
            return Err(Error::Dimension { expected: j.dim, got: j.basis.len() });
        }
        if j.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let mut entries = Vec::with_capacity(j.brackets.len());
        for e in &j.brackets {
            if e.i == 0 || e.j == 0 || e.k == 0 || e.i > j.dim || e.j > j.dim || e.k > j.dim {
                return Err(Error::IndexRange(format!("({},{},{}) with dim {}", e.i, e.j, e.k, j.dim)));
            }
            if e.i >= e.j {
                return Err(Error::IndexOrder { i: e.i, j: e.j, k: e.k });
            }
            entries.push((e.i - 1, e.j - 1, e.k - 1, scalar::parse(&e.c)?));
        }
        Self::from_constants(j.basis.clone(), entries)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serializes")
    }

    /// Parses JSON text, reporting line and column on syntax errors.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: LawJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// JSON interchange form of a law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl Serialize for LieLaw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieLaw {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LawJson::deserialize(d)?;
        LieLaw::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LieLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for (i, j, k, c) in self.constants() {
            let term = if c == scalar::one() {
                self.labels[k].clone()
            } else {
                format!("{}·{}", scalar::format(&c), self.labels[k])
            };
            pairs.entry((i, j)).or_default().push(term);
        }
        if pairs.is_empty() {
            return write!(f, "abelian of dim {}", self.dim());
        }
        let parts: Vec<String> = pairs
            .iter()
            .map(|((i, j), ts)| format!("[{},{}] = {}", self.labels[*i], self.labels[*j], ts.join(" + ")))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}
