use crate::algebra::LieLaw;
use crate::error::{Error, Result};

use super::cochain::{sort_with_sign, Cochain, CochainIndex, Module};
use super::complex::{cohomology_basis, d, rank_mod_coboundaries};

/// Exterior product of trivial cochains, `e^I ∧ e^J = ±e^{I∪J}`.
pub fn wedge(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.module() != Module::Trivial || b.module() != Module::Trivial {
        return Err(Error::Cochain("cup products need trivial coefficients".into()));
    }
    let mut out = Cochain::zero(Module::Trivial, a.degree() + b.degree());
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let joined: Vec<usize> = i.indices.iter().chain(&j.indices).copied().collect();
            if let Some((sorted, odd)) = sort_with_sign(&joined) {
                let v = x * y;
                out.add_term(CochainIndex::trivial(sorted), if odd { -v } else { v });
            }
        }
    }
    Ok(out)
}

/// Cup product of two cocycles.
pub fn cup_product(l: &LieLaw, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    for c in [a, b] {
        if c.module() != Module::Trivial {
            return Err(Error::Cochain("cup products need trivial coefficients".into()));
        }
        if !d(l, c)?.is_zero() {
            return Err(Error::Cochain(format!("{c} is not a cocycle")));
        }
    }
    wedge(a, b)
}

/// Pairwise cup products `r_a ∪ r_b` (`a ≤ b`) of an `H²` basis.
pub fn cup_square_products(l: &LieLaw) -> Result<Vec<Cochain>> {
    let reps = cohomology_basis(l, 2, Module::Trivial).representatives;
    let mut out = Vec::new();
    for a in 0..reps.len() {
        for b in a..reps.len() {
            out.push(wedge(&reps[a], &reps[b])?);
        }
    }
    Ok(out)
}

/// Rank of `H² ⊙ H² → H⁴`.
pub fn cup_square_rank(l: &LieLaw) -> Result<usize> {
    if l.dim() < 4 {
        return Ok(0);
    }
    rank_mod_coboundaries(l, Module::Trivial, 4, &cup_square_products(l)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::cohomology::{classify_cochain, in_span_mod_coboundaries, Classification};
    use crate::scalar::{int, one};

    #[test]
    fn unit_and_graded_commutativity() {
        let l = catalog("l_6_7").unwrap();
        let unit = Cochain::from_terms(Module::Trivial, 0, [(vec![], None, one())]).unwrap();
        let reps = cohomology_basis(&l, 2, Module::Trivial).representatives;
        assert_eq!(cup_product(&l, &unit, &reps[0]).unwrap(), reps[0]);
        let a = Cochain::basis_trivial(&[0]);
        let b = Cochain::basis_trivial(&[1]);
        let ab = cup_product(&l, &a, &b).unwrap();
        let ba = cup_product(&l, &b, &a).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule() {
        let l = catalog("l_6_13").unwrap();
        let a = Cochain::from_terms(Module::Trivial, 2, [(vec![1, 3], None, int(2)), (vec![0, 4], None, int(-1))]).unwrap();
        let b = Cochain::from_terms(Module::Trivial, 1, [(vec![2], None, int(1)), (vec![5], None, int(3))]).unwrap();
        let lhs = d(&l, &wedge(&a, &b).unwrap()).unwrap();
        let rhs = wedge(&d(&l, &a).unwrap(), &b).unwrap().add(&wedge(&a, &d(&l, &b).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_changes_by_coboundary_only() {
        let l = catalog("l_6_12").unwrap();
        let reps = cohomology_basis(&l, 2, Module::Trivial).representatives;
        let eta = Cochain::from_terms(Module::Trivial, 1, [(vec![3], None, int(1)), (vec![4], None, int(-2))]).unwrap();
        let shifted = reps[0].add(&d(&l, &eta).unwrap()).unwrap();
        let diff = cup_product(&l, &shifted, &reps[1]).unwrap().sub(&cup_product(&l, &reps[0], &reps[1]).unwrap()).unwrap();
        assert!(matches!(classify_cochain(&l, &diff).unwrap(), Classification::Coboundary { .. }) || diff.is_zero());
        assert!(in_span_mod_coboundaries(&l, &diff, &[]).unwrap());
    }

    #[test]
    fn non_cocycle_rejected() {
        let l = catalog("heis(3)").unwrap();
        let z = Cochain::basis_trivial(&[2]);
        assert!(cup_product(&l, &z, &z).is_err());
    }
}
