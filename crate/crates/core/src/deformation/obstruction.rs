use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::LieLaw;
use crate::cohomology::{adjoint_h_dim, betti_numbers};
use crate::error::{Error, Result};
use crate::linalg::{Poly, Subspace};
use crate::scalar;

/// One upper-semicontinuous invariant compared across a putative degeneration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub invariant: String,
    pub source: usize,
    pub target: usize,
    pub violated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    Obstructed,
    NoObstructionFound,
}

/// One-sided report: "no obstruction found" never proves a degeneration exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rows: Vec<ObstructionRow>,
    pub verdict: ObstructionVerdict,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == ObstructionVerdict::Obstructed
    }

    pub fn row(&self, invariant: &str) -> Option<&ObstructionRow> {
        self.rows.iter().find(|r| r.invariant == invariant)
    }
}

/// Compares Betti numbers, `dim H¹(·,·)` and the center; any drop from `g` to `h` rules out `g → h`.
pub fn semicontinuity_obstruction(g: &LieLaw, h: &LieLaw) -> Result<ObstructionReport> {
    if g.dim() != h.dim() {
        return Err(Error::Dimension { expected: g.dim(), got: h.dim() });
    }
    let mut rows = Vec::new();
    let mut push = |name: String, s: usize, t: usize| rows.push(ObstructionRow { invariant: name, source: s, target: t, violated: t < s });
    let (bg, bh) = (betti_numbers(g), betti_numbers(h));
    for (p, (s, t)) in bg.iter().zip(&bh).enumerate() {
        push(format!("b_{p}"), *s, *t);
    }
    push("dim H^1(adj)".into(), adjoint_h_dim(g, 1), adjoint_h_dim(h, 1));
    push("dim center".into(), g.center().dim(), h.center().dim());
    let verdict = if rows.iter().any(|r| r.violated) { ObstructionVerdict::Obstructed } else { ObstructionVerdict::NoObstructionFound };
    Ok(ObstructionReport { rows, verdict })
}

/// Verdict of [`spectral_obstruction`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SpectralVerdict {
    /// Char polys of `ad_A` on `[g,g]`, ascending coefficients.
    Obstructed { source_charpoly: String, target_charpoly: String },
    NotObstructed { source_charpoly: String, target_charpoly: String },
    Inapplicable { reason: String },
}

/// Char poly of `ad_A` on `[g,g]` for `g` with `b₁ = 1` and nilpotent codimension-one derived algebra.
pub fn derived_action_charpoly(g: &LieLaw) -> std::result::Result<Poly, String> {
    let n = g.dim();
    let der = g.derived_algebra();
    if der.dim() + 1 != n {
        return Err(format!("b_1 = {} ≠ 1", n - der.dim()));
    }
    if !g.subalgebra(&der).map_err(|e| e.to_string())?.is_nilpotent() {
        return Err("derived algebra is not nilpotent".into());
    }
    let a = Subspace::full(n).complement_of(&der).pop().expect("codimension one");
    let m = crate::algebra::restrict(&g.ad(&a).map_err(|e| e.to_string())?, &der).map_err(|e| e.to_string())?;
    Ok(Poly::charpoly(&m))
}

/// Whether `q(x) = c^d p(x/c)` for some real `c ≠ 0`, i.e. the root multisets agree up to scaling.
pub fn projectively_equal(p: &Poly, q: &Poly) -> bool {
    let d = p.degree();
    if q.degree() != d || p.is_zero() || q.is_zero() {
        return false;
    }
    let (p, q) = (p.monic(), q.monic());
    // Coefficient of x^{d−k} scales by c^k.
    let coef = |f: &Poly, k: usize| f.coeff(d - k);
    let mut k0 = None;
    for k in 1..=d {
        let (a, b) = (coef(&p, k), coef(&q, k));
        if a.is_zero() != b.is_zero() {
            return false;
        }
        if k0.is_none() && !a.is_zero() {
            k0 = Some(k);
        }
    }
    let Some(k0) = k0 else { return true };
    let r0 = coef(&q, k0) / coef(&p, k0);
    if k0.is_even() && r0.is_negative() {
        return false;
    }
    // Sign of c, when fixed by an odd k; None means both signs remain possible.
    let mut sign: Option<bool> = k0.is_odd().then(|| r0.is_positive());
    for k in k0 + 1..=d {
        let a = coef(&p, k);
        if a.is_zero() {
            continue;
        }
        let r = coef(&q, k) / a;
        // |c|^{k·k0} agreement: r^{k0} = r0^{k}.
        if scalar::pow(&r.abs(), k0 as i64) != scalar::pow(&r0.abs(), k as i64) {
            return false;
        }
        if k.is_odd() {
            let s = r.is_positive();
            match sign {
                Some(x) if x != s => return false,
                _ => sign = Some(s),
            }
        } else if r.is_negative() {
            return false;
        }
    }
    true
}

/// Compares projectivized spectra of `ad_A` on `[g,g]`; a mismatch obstructs both directions.
pub fn spectral_obstruction(g: &LieLaw, h: &LieLaw) -> SpectralVerdict {
    let (pg, ph) = match (derived_action_charpoly(g), derived_action_charpoly(h)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) => return SpectralVerdict::Inapplicable { reason: format!("source: {e}") },
        (_, Err(e)) => return SpectralVerdict::Inapplicable { reason: format!("target: {e}") },
    };
    let (source_charpoly, target_charpoly) = (pg.to_string(), ph.to_string());
    if projectively_equal(&pg, &ph) {
        SpectralVerdict::NotObstructed { source_charpoly, target_charpoly }
    } else {
        SpectralVerdict::Obstructed { source_charpoly, target_charpoly }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::linalg::Matrix;
    use crate::scalar::int;

    fn abelian_ext(alpha: Matrix) -> LieLaw {
        LieLaw::abelian(alpha.rows()).semidirect_rank_one(&alpha).unwrap()
    }

    #[test]
    fn identical_pair_is_unobstructed() {
        let g = catalog("l_6_11").unwrap();
        assert!(!semicontinuity_obstruction(&g, &g).unwrap().is_obstructed());
    }

    #[test]
    fn listed_obstructions() {
        let r = semicontinuity_obstruction(&catalog("l_6_7").unwrap(), &catalog("l_6_6").unwrap()).unwrap();
        assert!(r.is_obstructed());
        let row = r.row("dim H^1(adj)").unwrap();
        assert_eq!((row.source, row.target, row.violated), (9, 8, true));
        let amalgam = abelian_ext(Matrix::diag_i64(&[1, 1, 2]));
        let r = semicontinuity_obstruction(&amalgam, &catalog("b(2,C)").unwrap()).unwrap();
        let row = r.row("dim H^1(adj)").unwrap();
        assert!(row.source >= 4 && row.violated);
    }

    #[test]
    fn spectra() {
        let a = abelian_ext(Matrix::diag_i64(&[1, 1, 1]));
        let b = abelian_ext(Matrix::diag_i64(&[1, 1, 2]));
        assert!(matches!(spectral_obstruction(&a, &b), SpectralVerdict::Obstructed { .. }));
        let j = abelian_ext(Matrix::jordan(3, int(1)));
        assert!(matches!(spectral_obstruction(&j, &catalog("b(4,R)").unwrap()), SpectralVerdict::NotObstructed { .. }));
        let h = catalog("heis(3)").unwrap();
        assert!(matches!(spectral_obstruction(&h, &h), SpectralVerdict::Inapplicable { .. }));
    }

    #[test]
    fn projective_comparison() {
        // roots {1,2} vs {−3,−6}: c = −3
        let p = Poly::linear(&int(1)).mul(&Poly::linear(&int(2)));
        let q = Poly::linear(&int(-3)).mul(&Poly::linear(&int(-6)));
        assert!(projectively_equal(&p, &q));
        let r = Poly::linear(&int(1)).mul(&Poly::linear(&int(3)));
        assert!(!projectively_equal(&p, &r));
        // x² + 1 vs x² + 4 (c = 2), and not vs x² − 1.
        assert!(projectively_equal(&Poly::from_i64(&[1, 0, 1]), &Poly::from_i64(&[4, 0, 1])));
        assert!(!projectively_equal(&Poly::from_i64(&[1, 0, 1]), &Poly::from_i64(&[-1, 0, 1])));
    }
}
