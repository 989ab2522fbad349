use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::LieLaw;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

use super::cochain::{Cochain, Module};

/// A Lie algebra grading `g = ⊕ V_w`, verified to satisfy `[V_a, V_b] ⊆ V_{a+b}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grading {
    parts: Vec<(i64, Subspace)>,
}

impl Grading {
    /// Parts with explicit weights.
    pub fn new(l: &LieLaw, parts: Vec<(i64, Subspace)>) -> Result<Self> {
        let n = l.dim();
        let mut total = Subspace::zero(n);
        let mut dim = 0;
        for (w, v) in &parts {
            if v.ambient() != n {
                return Err(Error::Grading(format!("part of weight {w} lives in dimension {}", v.ambient())));
            }
            total = total.sum(v);
            dim += v.dim();
        }
        if dim != n || total.dim() != n {
            return Err(Error::Grading("parts do not form a direct sum decomposition".into()));
        }
        let g = Grading { parts };
        for (wa, va) in &g.parts {
            for (wb, vb) in &g.parts {
                let br = l.bracket_spaces(va, vb);
                let ok = match g.part(wa + wb) {
                    Some(t) => t.contains_space(&br),
                    None => br.is_zero(),
                };
                if !ok {
                    return Err(Error::Grading(format!("[V_{wa}, V_{wb}] is not contained in V_{}", wa + wb)));
                }
            }
        }
        Ok(g)
    }

    /// Parts weighted `1, 2, …` in the given order.
    pub fn consecutive(l: &LieLaw, parts: Vec<Subspace>) -> Result<Self> {
        Self::new(l, parts.into_iter().enumerate().map(|(i, v)| (i as i64 + 1, v)).collect())
    }

    pub fn part(&self, w: i64) -> Option<&Subspace> {
        self.parts.iter().find(|(x, _)| *x == w).map(|(_, v)| v)
    }

    pub fn parts(&self) -> &[(i64, Subspace)] {
        &self.parts
    }

    /// Adapted basis as matrix columns, with the weight of each column.
    pub fn adapted_basis(&self) -> (Matrix, Vec<i64>) {
        let mut cols = Vec::new();
        let mut weights = Vec::new();
        for (w, v) in &self.parts {
            for b in v.basis() {
                cols.push(b.clone());
                weights.push(*w);
            }
        }
        (Matrix::from_cols(&cols).expect("equal lengths"), weights)
    }
}

/// Weight of a cochain under a grading.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWeight {
    Zero,
    Homogeneous { weight: i64 },
    /// Homogeneous components in the original basis.
    Mixed { components: BTreeMap<i64, Cochain> },
}

/// Weight: value weight minus the sum of covector weights, per term in an adapted basis.
pub fn class_weight(grading: &Grading, omega: &Cochain) -> Result<ClassWeight> {
    let (q, weights) = grading.adapted_basis();
    let local = omega.in_basis(&q)?;
    let mut comps: BTreeMap<i64, Cochain> = BTreeMap::new();
    for (idx, c) in local.terms() {
        let value = match (omega.module(), idx.k) {
            (Module::Adjoint, Some(k)) => weights[k],
            _ => 0,
        };
        let w = value - idx.indices.iter().map(|&i| weights[i]).sum::<i64>();
        comps.entry(w).or_insert_with(|| Cochain::zero(omega.module(), omega.degree())).add_term(idx.clone(), c.clone());
    }
    Ok(match comps.len() {
        0 => ClassWeight::Zero,
        1 => ClassWeight::Homogeneous { weight: *comps.keys().next().expect("one entry") },
        _ => {
            let q_inv = q.inverse()?;
            let back = comps.into_iter().map(|(w, c)| Ok((w, c.in_basis(&q_inv)?))).collect::<Result<_>>()?;
            ClassWeight::Mixed { components: back }
        }
    })
}

/// The law itself as the adjoint 2-cochain `Σ c_{ij}^k e_k ⊗ e^{ij}`.
pub fn law_cochain(l: &LieLaw) -> Cochain {
    let terms: Vec<(Vec<usize>, Option<usize>, Scalar)> = l.constants().into_iter().map(|(i, j, k, c)| (vec![i, j], Some(k), c)).collect();
    Cochain::from_terms(Module::Adjoint, 2, terms).expect("degree 2")
}
