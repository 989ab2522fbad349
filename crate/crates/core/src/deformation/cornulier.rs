use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{restrict, solve, LieLaw};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Poly, Subspace};
use crate::scalar::{self, Scalar};

use super::family::{contract, ScalingFamily};
use super::graded::graded_nilpotent;

/// A joint generalized weight space of `h` acting on `r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSpace {
    /// Values of the weight on the echelon basis of `h`.
    #[serde(with = "scalar::serde_scalar_vec")]
    pub weight: Vec<Scalar>,
    pub space: Subspace,
}

/// Output of [`cornulier_reduction`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornulierReduction {
    pub radical: Subspace,
    /// `h ∩ r`.
    pub w: Subspace,
    pub weight_spaces: Vec<WeightSpace>,
    /// `r ⋊_δ (h/w)` with `δ` the semisimple part of the `h`-action.
    pub g1: LieLaw,
    /// `r ⋊ gr(h/w)`, with `δ` on degree one and zero above.
    pub g_inf: LieLaw,
    /// Contraction of `g` onto `g1`, emitted only when `r` is abelian and the limit checks out.
    pub family: Option<ScalingFamily>,
    pub note: String,
}

/// Solvable, and every `ad(e_i)` has only real eigenvalues.
pub fn check_completely_solvable(g: &LieLaw) -> Result<()> {
    if !g.is_solvable() {
        return Err(Error::NotCompletelySolvable("not solvable".into()));
    }
    for i in 0..g.dim() {
        let p = Poly::charpoly(&g.ad_basis(i));
        if !p.all_roots_real() {
            return Err(Error::NotCompletelySolvable(format!("ad({}) has char poly {p} with non-real roots", g.labels()[i])));
        }
    }
    Ok(())
}

/// Nilpotent and self-normalizing.
pub fn check_cartan(g: &LieLaw, h: &Subspace) -> Result<()> {
    if h.ambient() != g.dim() {
        return Err(Error::Dimension { expected: g.dim(), got: h.ambient() });
    }
    if !h.contains_space(&g.bracket_spaces(h, h)) {
        return Err(Error::NotCartan("not a subalgebra".into()));
    }
    if !g.subalgebra(h)?.is_nilpotent() {
        return Err(Error::NotCartan("not nilpotent".into()));
    }
    let norm = g.normalizer(h);
    if norm != *h {
        return Err(Error::NotCartan(format!("normalizer has dimension {} > {}", norm.dim(), h.dim())));
    }
    Ok(())
}

fn combine(s: &Subspace, coords: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); s.ambient()];
    for (c, b) in coords.iter().zip(s.basis()) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Joint generalized weight spaces of `ad(h)` on `r`; errors on irrational weights.
pub fn weight_spaces(g: &LieLaw, h: &Subspace, r: &Subspace) -> Result<Vec<WeightSpace>> {
    let mut spaces = if r.is_zero() { Vec::new() } else { vec![WeightSpace { weight: Vec::new(), space: r.clone() }] };
    for x in h.basis() {
        let ad = g.ad(x)?;
        let mut next = Vec::new();
        for ws in spaces {
            let m = restrict(&ad, &ws.space)?;
            let p = Poly::charpoly(&m);
            let roots = p.rational_roots();
            if roots.iter().map(|(_, k)| k).sum::<usize>() < p.degree() {
                return Err(Error::IrrationalWeights(p.without_rational_roots().to_string()));
            }
            for (lambda, mult) in roots {
                let shifted = m.sub(&Matrix::identity(m.rows()).scale(&lambda))?.pow(mult as u32)?;
                let vecs: Vec<Vec<Scalar>> = shifted.kernel().iter().map(|c| combine(&ws.space, c)).collect();
                let mut weight = ws.weight.clone();
                weight.push(lambda);
                next.push(WeightSpace { weight, space: Subspace::span(g.dim(), &vecs)? });
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

fn label_for(g: &LieLaw, v: &[Scalar], fallback: String) -> String {
    let nz: Vec<usize> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect();
    match nz.as_slice() {
        [i] if v[*i] == scalar::one() => g.labels()[*i].clone(),
        _ => fallback,
    }
}

/// `g = r ⊕ (h/w)` reductions: `g1 = r ⋊_δ (h/w)` and `g_inf = r ⋊ gr(h/w)`.
pub fn cornulier_reduction(g: &LieLaw, h: &Subspace) -> Result<CornulierReduction> {
    check_completely_solvable(g)?;
    check_cartan(g, h)?;
    let n = g.dim();
    let r = g.exponential_radical();
    let w = h.intersection(&r);
    let spaces = weight_spaces(g, h, &r)?;
    let comp = h.complement_of(&w);
    if r.dim() + comp.len() != n {
        return Err(Error::NotCartan("h + r is not the whole algebra".into()));
    }

    // Nilpotent parts of ad(x) on r, for the kernel filtration.
    let mut r_basis: Vec<Vec<Scalar>> = Vec::new();
    let mut r_level: Vec<i64> = Vec::new();
    let mut r_weight: Vec<Vec<Scalar>> = Vec::new();
    for ws in &spaces {
        let nus: Vec<Matrix> = h
            .basis()
            .iter()
            .zip(0..)
            .map(|(x, a)| {
                let m = restrict(&g.ad(x)?, &ws.space)?;
                m.sub(&Matrix::identity(m.rows()).scale(&ws.weight[a]))
            })
            .collect::<Result<_>>()?;
        let d = ws.space.dim();
        let mut levels = vec![Subspace::zero(d)];
        while levels.last().expect("nonempty").dim() < d {
            let prev = levels.last().expect("nonempty");
            // v ∈ K_j ⇔ ν_a v ∈ K_{j−1} for all a.
            let ann = if prev.is_zero() { Matrix::identity(d).to_rows() } else { Matrix::from_rows(prev.basis().to_vec())?.kernel() };
            let mut rows = Vec::new();
            if !ann.is_empty() {
                let a = Matrix::from_rows(ann)?;
                for nu in &nus {
                    rows.extend(a.mul(nu)?.to_rows());
                }
            }
            let next = if rows.is_empty() { Subspace::full(d) } else { Subspace::span(d, &Matrix::from_rows(rows)?.kernel())? };
            if next.dim() == prev.dim() {
                return Err(Error::Invalid("kernel filtration stalled".into()));
            }
            levels.push(next);
        }
        for (j, pair) in levels.windows(2).enumerate() {
            for v in pair[1].complement_of(&pair[0]) {
                r_basis.push(combine(&ws.space, &v));
                r_level.push(j as i64 + 1);
                r_weight.push(ws.weight.clone());
            }
        }
    }
    let dr = r_basis.len();
    let dc = comp.len();

    // Value of a weight on an element of h.
    let weight_at = |wt: &[Scalar], x: &[Scalar]| -> Result<Scalar> {
        let c = h.coordinates(x).ok_or_else(|| Error::Invalid("element outside h".into()))?;
        Ok(c.iter().zip(wt).map(|(a, b)| a * b).sum())
    };
    let r_mat = if dr == 0 { None } else { Some(Matrix::from_cols(&r_basis)?) };
    let r_coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        match &r_mat {
            Some(m) => solve(m, v).ok_or_else(|| Error::Invalid("bracket leaves r".into())),
            None => Ok(Vec::new()),
        }
    };
    let mut h_cols = comp.clone();
    h_cols.extend(w.basis().iter().cloned());
    let h_mat = if h_cols.is_empty() { None } else { Some(Matrix::from_cols(&h_cols)?) };
    let comp_coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        match &h_mat {
            Some(m) => Ok(solve(m, v).ok_or_else(|| Error::Invalid("bracket leaves h".into()))?[..dc].to_vec()),
            None => Ok(Vec::new()),
        }
    };

    let mut labels: Vec<String> = r_basis.iter().enumerate().map(|(i, v)| label_for(g, v, format!("R{}", i + 1))).collect();
    labels.extend(comp.iter().enumerate().map(|(a, v)| label_for(g, v, format!("H{}", a + 1))));

    let mut rr = Vec::new();
    for i in 0..dr {
        for j in i + 1..dr {
            for (k, c) in r_coords(&g.bracket(&r_basis[i], &r_basis[j])?)?.into_iter().enumerate() {
                if !c.is_zero() {
                    rr.push((i, j, k, c));
                }
            }
        }
    }
    // [H_a, R_i] = δ(H_a) R_i, stored as [R_i, H_a] = −δ(H_a) R_i.
    let delta_entries = |cs: &[Vec<Scalar>], active: &dyn Fn(usize) -> bool| -> Result<Vec<(usize, usize, usize, Scalar)>> {
        let mut out = Vec::new();
        for (a, c) in cs.iter().enumerate().filter(|(a, _)| active(*a)) {
            for i in 0..dr {
                let l = weight_at(&r_weight[i], c)?;
                if !l.is_zero() {
                    out.push((i, dr + a, i, -l));
                }
            }
        }
        Ok(out)
    };

    let mut quotient = Vec::new();
    for a in 0..dc {
        for b in a + 1..dc {
            for (k, c) in comp_coords(&g.bracket(&comp[a], &comp[b])?)?.into_iter().enumerate() {
                if !c.is_zero() {
                    quotient.push((a, b, k, c));
                }
            }
        }
    }
    let q_law = LieLaw::from_constants(labels[dr..].to_vec(), quotient.clone())?;

    let mut e1 = rr.clone();
    e1.extend(delta_entries(&comp, &|_| true)?);
    e1.extend(quotient.iter().map(|(a, b, k, c)| (dr + a, dr + b, dr + k, c.clone())));
    let g1 = LieLaw::from_constants(labels.clone(), e1)?.validated()?;

    let graded = graded_nilpotent(&q_law)?;
    let new_comp: Vec<Vec<Scalar>> = (0..dc)
        .map(|b| {
            let col = graded.basis.column(b);
            let mut v = vec![Scalar::zero(); n];
            for (x, c) in col.iter().zip(&comp) {
                for (o, y) in v.iter_mut().zip(c) {
                    *o += x * y;
                }
            }
            v
        })
        .collect();
    let mut einf = rr;
    einf.extend(delta_entries(&new_comp, &|b| graded.weights[b] == 1)?);
    einf.extend(graded.gr.constants().into_iter().map(|(a, b, k, c)| (dr + a, dr + b, dr + k, c)));
    let g_inf = LieLaw::from_constants(labels, einf)?.validated()?;

    let (family, note) = if !g.bracket_spaces(&r, &r).is_zero() {
        (None, "r is nonabelian; no contraction family is emitted".to_string())
    } else {
        let mut cols = r_basis.clone();
        cols.extend(comp.iter().cloned());
        let mut wts: Vec<Scalar> = r_level.iter().map(|&l| scalar::int(-l)).collect();
        wts.extend((0..dc).map(|_| Scalar::zero()));
        let f = ScalingFamily::in_basis(&Matrix::from_cols(&cols)?, wts)?;
        match contract(g, &f) {
            Ok(limit) if limit == g1 => (Some(f), "kernel-filtration family contracts g onto g1".to_string()),
            Ok(_) => (None, "kernel-filtration family does not reach g1".to_string()),
            Err(e) => (None, format!("kernel-filtration family fails: {e}")),
        }
    };
    Ok(CornulierReduction { radical: r, w, weight_spaces: spaces, g1, g_inf, family, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::linalg::unit;

    #[test]
    fn s_prime_reduces_to_h2c() {
        let s = catalog("s_prime").unwrap();
        let h = Subspace::coordinate(4, &[3]);
        let red = cornulier_reduction(&s, &h).unwrap();
        let target = catalog("h2c_solvable").unwrap();
        assert_eq!(red.g1, target);
        assert_eq!(red.g_inf, target);
        assert_eq!(red.radical.dim(), 3);
        assert!(red.family.is_none());
    }

    #[test]
    fn s_second_reduces_to_diagonal() {
        let s = catalog("s_second").unwrap();
        let red = cornulier_reduction(&s, &Subspace::coordinate(4, &[3])).unwrap();
        let target = LieLaw::abelian(3).semidirect_rank_one(&Matrix::diag_i64(&[1, 1, 2])).unwrap();
        assert_eq!(red.g1, target);
        let f = red.family.expect("abelian radical");
        assert_eq!(contract(&s, &f).unwrap(), target);
    }

    #[test]
    fn nilpotent_with_full_cartan() {
        for name in ["l_6_6", "heis(3)", "l_4_3"] {
            let g = catalog(name).unwrap();
            let red = cornulier_reduction(&g, &Subspace::full(g.dim())).unwrap();
            assert_eq!(red.g1, g, "{name}");
            assert_eq!(red.g_inf, graded_nilpotent(&g).unwrap().gr, "{name}");
        }
    }

    #[test]
    fn rejections() {
        let s = catalog("s_prime").unwrap();
        let not_cartan = Subspace::span(4, &[unit(4, 2)]).unwrap();
        assert!(matches!(cornulier_reduction(&s, &not_cartan), Err(Error::NotCartan(_))));
        // ℝ² ⋊ rotation is not completely solvable.
        let rot = LieLaw::abelian(2).semidirect_rank_one(&Matrix::from_i64(&[&[1, -1], &[1, 1]])).unwrap();
        assert!(matches!(cornulier_reduction(&rot, &Subspace::coordinate(3, &[2])), Err(Error::NotCompletelySolvable(_))));
    }

    #[test]
    fn irrational_weights_named() {
        // ℝ² ⋊ [[0,2],[1,0]] has eigenvalues ±√2.
        let g = LieLaw::abelian(2).semidirect_rank_one(&Matrix::from_i64(&[&[0, 2], &[1, 0]])).unwrap();
        match cornulier_reduction(&g, &Subspace::coordinate(3, &[2])) {
            Err(Error::IrrationalWeights(f)) => assert!(f.contains("x^2")),
            other => panic!("{other:?}"),
        }
    }
}
