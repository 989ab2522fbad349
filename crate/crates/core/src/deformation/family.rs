use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{JacobiReport, LieLaw};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// `φ_t = diag(t^{w_1}, …, t^{w_n})` in the coordinates `y = P·x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingFamily {
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Matrix>,
    #[serde(with = "scalar::serde_scalar_vec")]
    pub w: Vec<Scalar>,
}

impl ScalingFamily {
    pub fn diagonal(w: Vec<Scalar>) -> Self {
        ScalingFamily { p: None, w }
    }

    pub fn diagonal_i64(w: &[i64]) -> Self {
        Self::diagonal(w.iter().map(|&x| scalar::int(x)).collect())
    }

    /// Family in the basis given by the columns of `q`.
    pub fn in_basis(q: &Matrix, w: Vec<Scalar>) -> Result<Self> {
        Ok(ScalingFamily { p: Some(q.inverse()?), w })
    }

    pub fn reversed(&self) -> Self {
        ScalingFamily { p: self.p.clone(), w: self.w.iter().map(|x| -x).collect() }
    }
}

/// Finite Laurent polynomial in `t` with rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<Scalar, Scalar>);

impl Laurent {
    pub fn monomial(c: Scalar, e: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Laurent(m)
    }

    fn add_assign(&mut self, o: &Laurent) {
        for (e, c) in &o.0 {
            let x = self.0.entry(e.clone()).or_insert_with(Scalar::zero);
            *x += c;
            if x.is_zero() {
                self.0.remove(e);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(exponent, coefficient)` pairs, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, &Scalar)> {
        self.0.iter()
    }

    pub fn constant_term(&self) -> Scalar {
        self.0.get(&Scalar::zero()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_exponent(&self) -> Option<&Scalar> {
        self.0.keys().next_back()
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.0.iter().map(|(e, c)| scalar::to_f64(c) * t.powf(scalar::to_f64(e))).sum()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(e, c)| if e.is_zero() { scalar::format(c) } else { format!("{}*t^{}", scalar::format(c), scalar::format(e)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A bracket whose constants are Laurent polynomials in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentLaw {
    labels: Vec<String>,
    entries: BTreeMap<(usize, usize, usize), Laurent>,
}

impl LaurentLaw {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Entry `(i, j, k)`, 0-based with `i < j`.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Laurent {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Laurent)> {
        self.entries.iter()
    }

    /// Entries carrying a positive power of `t`.
    pub fn divergent_entries(&self) -> Vec<(usize, usize, usize)> {
        self.entries.iter().filter(|(_, p)| p.max_exponent().is_some_and(|e| e.is_positive())).map(|(k, _)| *k).collect()
    }
}

#[derive(Serialize)]
struct LaurentEntryJson {
    i: usize,
    j: usize,
    k: usize,
    terms: Vec<(String, String)>,
}

impl Serialize for LaurentLaw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Body<'a> {
            dim: usize,
            basis: &'a [String],
            /// `(exponent, coefficient)` per term.
            brackets: Vec<LaurentEntryJson>,
        }
        let brackets = self
            .entries
            .iter()
            .map(|(&(i, j, k), p)| LaurentEntryJson {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                terms: p.terms().map(|(e, c)| (scalar::format(e), scalar::format(c))).collect(),
            })
            .collect();
        Body { dim: self.dim(), basis: &self.labels, brackets }.serialize(s)
    }
}

impl fmt::Display for LaurentLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_pair: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for ((i, j, k), p) in &self.entries {
            by_pair.entry((*i, *j)).or_default().push(format!("({p})·{}", self.labels[*k]));
        }
        for ((i, j), terms) in by_pair {
            writeln!(f, "[{}, {}] = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
        }
        Ok(())
    }
}

/// Laurent coefficients of `φ_t⁻¹[φ_t x, φ_t y]`: entry `(i,j,k)` is `c_{ij}^k t^{w_i+w_j−w_k}`.
pub fn apply_family(l: &LieLaw, f: &ScalingFamily) -> Result<LaurentLaw> {
    let n = l.dim();
    if f.w.len() != n {
        return Err(Error::Dimension { expected: n, got: f.w.len() });
    }
    let base = match &f.p {
        Some(p) => l.basis_change(p)?,
        None => l.clone(),
    };
    let mut entries: BTreeMap<(usize, usize, usize), Laurent> = BTreeMap::new();
    for (i, j, k, c) in base.constants() {
        let e = &f.w[i] + &f.w[j] - &f.w[k];
        entries.entry((i, j, k)).or_default().add_assign(&Laurent::monomial(c, e));
    }
    entries.retain(|_, p| !p.is_zero());
    Ok(LaurentLaw { labels: base.labels().to_vec(), entries })
}

/// Limit as `t → ∞`: the constant terms, provided no positive power occurs.
pub fn contraction_limit(lam: &LaurentLaw) -> Result<LieLaw> {
    let bad = lam.divergent_entries();
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(|(i, j, k)| format!("({},{},{})", i + 1, j + 1, k + 1)).collect();
        return Err(Error::Divergent(list.join(", ")));
    }
    let entries = lam.entries.iter().map(|(&(i, j, k), p)| (i, j, k, p.constant_term())).filter(|e| !e.3.is_zero());
    let limit = LieLaw::from_constants(lam.labels.clone(), entries)?;
    // Laws form a closed set, so this cannot fail for a family of Lie algebras.
    match limit.check_jacobi() {
        JacobiReport::Ok => Ok(limit),
        JacobiReport::Violation { triple: (a, b, c), .. } => Err(Error::Jacobi(a, b, c)),
    }
}

/// `apply_family` then `contraction_limit`.
pub fn contract(l: &LieLaw, f: &ScalingFamily) -> Result<LieLaw> {
    contraction_limit(&apply_family(l, f)?)
}
