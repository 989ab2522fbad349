use serde::Serialize;

use crate::algebra::LieLaw;
use crate::error::{Error, Result};
use crate::linalg::sparse::{SparseMatrix, SparseVec};
use crate::linalg::Echelon;
use crate::scalar::{self, Scalar};

use super::cochain::{Cochain, CochainBasis, Module};

/// Matrix of `d: C^q → C^{q+1}`; column `j` is the image of source basis element `j`.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub source: CochainBasis,
    pub target: CochainBasis,
    pub matrix: SparseMatrix,
}

impl DifferentialMatrix {
    pub fn apply(&self, c: &Cochain) -> Result<Cochain> {
        let v = c.to_vector(&self.source)?;
        Ok(Cochain::from_vector(&self.target, &self.matrix.mul_vec(&v)))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Chevalley–Eilenberg differential
/// `dω(x₀…x_q) = Σ_{a<b} (−1)^{a+b} ω([x_a,x_b], …) + Σ_a (−1)^a x_a·ω(…x̂_a…)`,
/// the second sum present only for adjoint coefficients.
pub fn differential(l: &LieLaw, q: usize, module: Module) -> DifferentialMatrix {
    let n = l.dim();
    let source = CochainBasis::new(n, q, module);
    let target = CochainBasis::new(n, q + 1, module);
    let table = l.table();
    let width = if module == Module::Adjoint { n } else { 1 };
    let mut trip: Vec<(usize, usize, Scalar)> = Vec::new();
    for (jr, jt) in target.tuple_list().iter().enumerate() {
        for a in 0..jt.len() {
            for b in a + 1..jt.len() {
                let rest: Vec<usize> = jt.iter().enumerate().filter(|&(p, _)| p != a && p != b).map(|(_, &x)| x).collect();
                for (m, c) in &table[jt[a]][jt[b]] {
                    if rest.contains(m) {
                        continue;
                    }
                    let below = rest.iter().filter(|&&x| x < *m).count();
                    let mut sorted = rest.clone();
                    sorted.insert(below, *m);
                    let ir = source.tuple_rank(&sorted).expect("valid tuple");
                    let v = if (a + b + below) % 2 == 0 { c.clone() } else { -c.clone() };
                    for k in 0..width {
                        trip.push((jr * width + k, ir * width + k, v.clone()));
                    }
                }
            }
            if module == Module::Adjoint {
                let rest: Vec<usize> = jt.iter().enumerate().filter(|&(p, _)| p != a).map(|(_, &x)| x).collect();
                let ir = source.tuple_rank(&rest).expect("valid tuple");
                for k in 0..n {
                    for (p, c) in &table[jt[a]][k] {
                        let v = if a % 2 == 0 { c.clone() } else { -c.clone() };
                        trip.push((jr * n + p, ir * n + k, v));
                    }
                }
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), source.dim(), trip);
    DifferentialMatrix { source, target, matrix }
}

/// Applies `d` to a single cochain.
pub fn d(l: &LieLaw, c: &Cochain) -> Result<Cochain> {
    differential(l, c.degree(), c.module()).apply(c)
}

/// Dimensions and representatives of `H^p`.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyResult {
    pub degree: usize,
    pub module: Module,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub representatives: Vec<Cochain>,
}

/// Cohomology at degree `p` with its representatives.
pub fn cohomology_basis(l: &LieLaw, p: usize, module: Module) -> CohomologyResult {
    let dp = differential(l, p, module);
    let z = dp.matrix.kernel();
    let mut e = Echelon::new(dp.source.dim());
    if p > 0 {
        for col in differential(l, p - 1, module).matrix.columns() {
            e.insert(&col);
        }
    }
    let dim_b = e.rank();
    let mut reps = Vec::new();
    for v in &z {
        if e.insert(v) {
            reps.push(Cochain::from_vector(&dp.source, v));
        }
    }
    CohomologyResult { degree: p, module, dim_z: z.len(), dim_b, dim_h: reps.len(), representatives: reps }
}

fn h_dim(l: &LieLaw, p: usize, module: Module) -> usize {
    let n = l.dim();
    if p > n {
        return 0;
    }
    let dp = differential(l, p, module);
    let dim_z = dp.source.dim() - dp.rank();
    let dim_b = if p == 0 { 0 } else { differential(l, p - 1, module).rank() };
    dim_z - dim_b
}

/// Betti number `dim H^p(L, ℚ)`.
pub fn betti(l: &LieLaw, p: usize) -> usize {
    h_dim(l, p, Module::Trivial)
}

/// All Betti numbers `b_0, …, b_n`.
pub fn betti_numbers(l: &LieLaw) -> Vec<usize> {
    let n = l.dim();
    let ranks: Vec<usize> = (0..=n).map(|q| differential(l, q, Module::Trivial).rank()).collect();
    (0..=n)
        .map(|p| {
            let c = CochainBasis::new(n, p, Module::Trivial).dim();
            c - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] }
        })
        .collect()
}

/// `dim H^p(L, L)`.
pub fn adjoint_h_dim(l: &LieLaw, p: usize) -> usize {
    h_dim(l, p, Module::Adjoint)
}

/// Verdict of [`classify_cochain`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Classification {
    NotCocycle { residual: Cochain },
    NontrivialClass,
    Coboundary { preimage: Cochain },
}

impl Classification {
    pub fn is_cocycle(&self) -> bool {
        !matches!(self, Classification::NotCocycle { .. })
    }
}

/// Decides whether `ω` is closed and, if so, whether it is exact (with a preimage).
pub fn classify_cochain(l: &LieLaw, omega: &Cochain) -> Result<Classification> {
    let q = omega.degree();
    if q > l.dim() {
        return Err(Error::Cochain(format!("degree {q} exceeds dimension {}", l.dim())));
    }
    let residual = d(l, omega)?;
    if !residual.is_zero() {
        return Ok(Classification::NotCocycle { residual });
    }
    match coboundary_preimage(l, omega)? {
        Some(pre) => Ok(Classification::Coboundary { preimage: pre }),
        None => Ok(Classification::NontrivialClass),
    }
}

/// Some `η` with `dη = ω`, if one exists.
pub fn coboundary_preimage(l: &LieLaw, omega: &Cochain) -> Result<Option<Cochain>> {
    let q = omega.degree();
    if q == 0 {
        return Ok(omega.is_zero().then(|| Cochain::zero(omega.module(), 0)));
    }
    let dm = differential(l, q - 1, omega.module());
    let target = omega.to_vector(&dm.target)?;
    let mut e = Echelon::new(dm.target.dim());
    for (j, col) in dm.matrix.columns().iter().enumerate() {
        let w: SparseVec = vec![(j, scalar::one())];
        e.insert_with_witness(col, w);
    }
    Ok(e.preimage(&target).map(|w| Cochain::from_vector(&dm.source, &w)))
}

/// Whether `ω` lies in `span(others) + B`.
pub fn in_span_mod_coboundaries(l: &LieLaw, omega: &Cochain, others: &[Cochain]) -> Result<bool> {
    let q = omega.degree();
    let basis = CochainBasis::new(l.dim(), q, omega.module());
    let mut e = Echelon::new(basis.dim());
    if q > 0 {
        for col in differential(l, q - 1, omega.module()).matrix.columns() {
            e.insert(&col);
        }
    }
    for o in others {
        e.insert(&o.to_vector(&basis)?);
    }
    Ok(e.contains(&omega.to_vector(&basis)?))
}

/// Rank of `span(cochains)` modulo `B`.
pub fn rank_mod_coboundaries(l: &LieLaw, module: Module, q: usize, cochains: &[Cochain]) -> Result<usize> {
    let basis = CochainBasis::new(l.dim(), q, module);
    let mut e = Echelon::new(basis.dim());
    if q > 0 {
        for col in differential(l, q - 1, module).matrix.columns() {
            e.insert(&col);
        }
    }
    let base = e.rank();
    for c in cochains {
        e.insert(&c.to_vector(&basis)?);
    }
    Ok(e.rank() - base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::scalar::int;

    #[test]
    fn d_squared_vanishes() {
        for name in ["heis(3)", "l_6_13", "s_second", "b(2,C)"] {
            let l = catalog(name).unwrap();
            for module in [Module::Trivial, Module::Adjoint] {
                for q in 0..l.dim() {
                    let d0 = differential(&l, q, module);
                    let d1 = differential(&l, q + 1, module);
                    assert!(d1.matrix.mul(&d0.matrix).is_zero(), "{name} {module:?} {q}");
                }
            }
        }
    }

    #[test]
    fn heis_trivial_cohomology() {
        let h = catalog("heis(3)").unwrap();
        assert_eq!(betti_numbers(&h), vec![1, 2, 2, 1]);
        // d e^Z = −e^{XY}
        let dz = d(&h, &Cochain::basis_trivial(&[2])).unwrap();
        assert_eq!(dz, Cochain::basis_trivial(&[0, 1]).scale(&int(-1)));
    }

    #[test]
    fn low_degree_adjoint_matches_structure() {
        for name in ["heis(3)", "l_6_7", "s_prime", "b(3,R)"] {
            let l = catalog(name).unwrap();
            assert_eq!(adjoint_h_dim(&l, 0), l.center().dim(), "{name}");
            assert_eq!(adjoint_h_dim(&l, 1), l.derivations().outer_dim, "{name}");
        }
    }

    #[test]
    fn classification_with_witness() {
        let l = catalog("l_6_7").unwrap();
        let eta = Cochain::basis_adjoint(2, &[1]);
        let omega = d(&l, &eta).unwrap();
        match classify_cochain(&l, &omega).unwrap() {
            Classification::Coboundary { preimage } => assert_eq!(d(&l, &preimage).unwrap(), omega),
            v => panic!("{v:?}"),
        }
        let xi1 = Cochain::basis_adjoint(4, &[1, 2]);
        assert_eq!(classify_cochain(&l, &xi1).unwrap(), Classification::NontrivialClass);
        let bad = Cochain::basis_trivial(&[2]);
        assert!(!classify_cochain(&l, &bad).unwrap().is_cocycle());
    }

    #[test]
    fn representatives_are_independent_classes() {
        let l = catalog("l_6_7").unwrap();
        let r = cohomology_basis(&l, 2, Module::Trivial);
        assert_eq!(r.dim_h, 5);
        assert_eq!(rank_mod_coboundaries(&l, Module::Trivial, 2, &r.representatives).unwrap(), 5);
        for c in &r.representatives {
            assert_eq!(classify_cochain(&l, c).unwrap(), Classification::NontrivialClass);
        }
    }
}
