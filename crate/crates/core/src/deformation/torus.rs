use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::LieLaw;
use crate::cohomology::{classify_cochain, Classification, Cochain, Module};
use crate::error::{Error, Result};
use crate::linalg::{unit, Matrix, Poly};
use crate::scalar::Scalar;

/// Commuting derivations, each semisimple with purely imaginary spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusData {
    pub base: LieLaw,
    pub derivations: Vec<Matrix>,
}

/// Checks derivation, commuting, semisimplicity and imaginary spectrum; all failures are listed.
pub fn torus_check(g0: &LieLaw, ds: &[Matrix]) -> Result<TorusData> {
    let n = g0.dim();
    let mut failures = Vec::new();
    for (a, d) in ds.iter().enumerate() {
        let name = format!("D{}", a + 1);
        if d.rows() != n || d.cols() != n {
            failures.push(format!("{name}: shape {}x{} for dimension {n}", d.rows(), d.cols()));
            continue;
        }
        if let Some((i, j)) = g0.derivation_defect(d) {
            failures.push(format!("{name}: not a derivation (pair {i},{j})"));
        }
        let min = Poly::minpoly(d);
        if !min.is_squarefree() {
            failures.push(format!("{name}: not semisimple (minimal polynomial {min})"));
        }
        // Spectrum in iℝ ⇔ every root of minpoly(D²) is real and ≤ 0. For a
        // real-rooted monic polynomial the latter means no coefficient is negative.
        let sq = Poly::minpoly(&d.mul(d)?).monic();
        if !sq.all_roots_real() || sq.coeffs().iter().any(Signed::is_negative) {
            failures.push(format!("{name}: spectrum not purely imaginary (minimal polynomial of D² is {sq})"));
        }
        for (b, e) in ds.iter().enumerate().skip(a + 1) {
            if e.rows() == n && e.cols() == n && !d.commutator(e)?.is_zero() {
                failures.push(format!("{name} and D{} do not commute", b + 1));
            }
        }
    }
    if !failures.is_empty() {
        return Err(Error::Torus(failures.join("; ")));
    }
    Ok(TorusData { base: g0.clone(), derivations: ds.to_vec() })
}

/// Output of [`modification`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Modification {
    /// Law of the graph `{X + τX}` in the basis `{e_i + τe_i}`.
    pub law: LieLaw,
    /// `ω_τ(X∧Y) = [τX, Y] + [X, τY]`.
    pub omega_tau: Cochain,
    pub is_twisting: bool,
    /// Cocycle check on `ω_τ`, run when `is_twisting`.
    pub classification: Option<Classification>,
    pub checks: Vec<(String, bool)>,
}

/// `τ` is a `k×n` matrix: `τ(e_j) = Σ_a τ_{aj} D_a`.
fn torus_image(t: &TorusData, tau: &Matrix, x: &[Scalar]) -> Result<Matrix> {
    let coeffs = tau.mul_vec(x)?;
    let n = t.base.dim();
    let mut out = Matrix::zeros(n, n);
    for (c, d) in coeffs.iter().zip(&t.derivations) {
        if !c.is_zero() {
            out = out.add(&d.scale(c))?;
        }
    }
    Ok(out)
}

/// Graph of `τ: g₀ → t` inside `g₀ ⋊ t`, its law and its cocycle.
pub fn modification(g0: &LieLaw, t: &TorusData, tau: &Matrix) -> Result<Modification> {
    let n = g0.dim();
    let k = t.derivations.len();
    if tau.rows() != k || tau.cols() != n {
        return Err(Error::Dimension { expected: k * n, got: tau.rows() * tau.cols() });
    }
    let images: Vec<Matrix> = (0..n).map(|j| torus_image(t, tau, &unit(n, j))).collect::<Result<_>>()?;
    let mut omega_terms = Vec::new();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // [X+τX, Y+τY] = [X,Y] + τX·Y − τY·X in g₀ ⋊ t (t abelian).
            let w: Vec<Scalar> = images[i].column(j).iter().zip(images[j].column(i)).map(|(a, b)| a - b).collect();
            let bracket = g0.bracket(&unit(n, i), &unit(n, j))?;
            let total: Vec<Scalar> = bracket.iter().zip(&w).map(|(a, b)| a + b).collect();
            // The graph is closed iff the t-part vanishes: τ(total) = 0.
            if tau.mul_vec(&total)?.iter().any(|x| !x.is_zero()) {
                return Err(Error::GraphNotClosed(format!("bracket of graph vectors {} and {} leaves the graph", i + 1, j + 1)));
            }
            for (m, c) in w.into_iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                omega_terms.push((vec![i, j], Some(m), c));
            }
            for (m, c) in total.into_iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                entries.push((i, j, m, c));
            }
        }
    }
    let law = LieLaw::from_constants(g0.labels().to_vec(), entries)?;
    let omega_tau = Cochain::from_terms(Module::Adjoint, 2, omega_terms)?;
    // Twisting: the image of τ normalizes the graph, i.e. τ(D·X) = 0 for D ∈ τ(g₀).
    let mut is_twisting = true;
    for img in &images {
        for j in 0..n {
            if tau.mul_vec(&img.column(j))?.iter().any(|x| !x.is_zero()) {
                is_twisting = false;
            }
        }
    }
    let mut checks = vec![("graph closed".to_string(), true), ("is twisting".to_string(), is_twisting)];
    let mut classification = None;
    if is_twisting {
        let c = classify_cochain(g0, &omega_tau)?;
        checks.push(("omega_tau is a cocycle".into(), c.is_cocycle()));
        let sum = g0.plus(&crate::deformation::cochain_law(g0.labels().to_vec(), &omega_tau)?)?;
        checks.push(("law = mu + omega_tau".into(), sum == law));
        classification = Some(c);
    }
    Ok(Modification { law, omega_tau, is_twisting, classification, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::scalar::int;

    fn rotation() -> Matrix {
        Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]])
    }

    #[test]
    fn torus_examples() {
        let b3 = catalog("b(3,R)").unwrap();
        assert!(torus_check(&b3, &[rotation()]).is_ok());
        let e = torus_check(&b3, &[Matrix::diag_i64(&[1, 1, 0])]).unwrap_err();
        assert!(e.to_string().contains("imaginary"));
        let e = torus_check(&LieLaw::abelian(2), &[Matrix::jordan(2, int(0))]).unwrap_err();
        assert!(e.to_string().contains("semisimple"));
    }

    #[test]
    fn rotation_twisting() {
        let b3 = catalog("b(3,R)").unwrap();
        let t = torus_check(&b3, &[rotation()]).unwrap();
        let m = modification(&b3, &t, &Matrix::from_i64(&[&[0, 0, 1]])).unwrap();
        assert!(m.is_twisting);
        assert!(m.checks.iter().all(|(_, ok)| *ok));
        // [S, X1]' = X1 + X2, [S, X2]' = X2 − X1
        assert_eq!(m.law.bracket(&unit(3, 2), &unit(3, 0)).unwrap(), vec![int(1), int(1), int(0)]);
        assert_eq!(m.law.bracket(&unit(3, 2), &unit(3, 1)).unwrap(), vec![int(-1), int(1), int(0)]);
        let m2 = modification(&b3, &t, &Matrix::from_i64(&[&[0, 0, 2]])).unwrap();
        assert_eq!(m2.law.bracket(&unit(3, 2), &unit(3, 0)).unwrap(), vec![int(1), int(2), int(0)]);
        let zero = modification(&b3, &t, &Matrix::zeros(1, 3)).unwrap();
        assert_eq!(zero.law, b3);
        assert!(zero.omega_tau.is_zero());
    }

    #[test]
    fn open_graph_rejected() {
        let b3 = catalog("b(3,R)").unwrap();
        let t = torus_check(&b3, &[rotation()]).unwrap();
        // τ(X1) = J: [X1+J, S] = −X1 − 0 has τ-part −J ≠ 0.
        assert!(matches!(modification(&b3, &t, &Matrix::from_i64(&[&[1, 0, 0]])), Err(Error::GraphNotClosed(_))));
    }
}
