use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieLaw;
use crate::cohomology::{d, Cochain, Module};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Outcome of [`linear_expandability`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expandability {
    pub expandable: bool,
    /// `d′ω = 0`, the coefficient of `t⁻¹` in the Jacobiator.
    pub cocycle: bool,
    /// `ω` satisfies the Jacobi identity on its own, the coefficient of `t⁻²`.
    pub quadratic_vanishes: bool,
    /// First failing basis triple (1-based) per order, if any.
    pub failures: Vec<(u32, (usize, usize, usize))>,
    /// `λ(1) = μ + ω` when expandable.
    pub law_at_one: Option<LieLaw>,
}

/// Adjoint 2-cochain as a (not necessarily Jacobi) bracket.
pub fn cochain_law(labels: Vec<String>, omega: &Cochain) -> Result<LieLaw> {
    if omega.module() != Module::Adjoint || omega.degree() != 2 {
        return Err(Error::Cochain("expected an adjoint 2-cochain".into()));
    }
    let entries = omega.terms().map(|(idx, c)| (idx.indices[0], idx.indices[1], idx.k.expect("adjoint"), c.clone()));
    LieLaw::from_constants(labels, entries)
}

/// Decides whether `λ(t) = μ + ω/t` satisfies the Jacobi identity for all `t`.
pub fn linear_expandability(mu: &LieLaw, omega: &Cochain) -> Result<Expandability> {
    let w = cochain_law(mu.labels().to_vec(), omega)?;
    let n = mu.dim();
    let plus = mu.plus(&w)?;
    let minus = mu.plus(&cochain_law(mu.labels().to_vec(), &omega.scale(&-scalar::one()))?)?;
    let mut failures = Vec::new();
    let half = scalar::frac(1, 2);
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let j0 = mu.jacobiator(i, j, k);
                let jp = plus.jacobiator(i, j, k);
                let jm = minus.jacobiator(i, j, k);
                // J(s) = J0 + s·J1 + s²·J2 with s = 1/t.
                let j1: Vec<Scalar> = jp.iter().zip(&jm).map(|(a, b)| (a - b) * &half).collect();
                let j2: Vec<Scalar> = jp.iter().zip(&jm).zip(&j0).map(|((a, b), c)| (a + b) * &half - c).collect();
                for (order, v) in [(0u32, &j0), (1, &j1), (2, &j2)] {
                    if v.iter().any(|x| !x.is_zero()) && !failures.iter().any(|(o, _)| *o == order) {
                        failures.push((order, (i + 1, j + 1, k + 1)));
                    }
                }
                if failures.len() == 3 {
                    break 'outer;
                }
            }
        }
    }
    let cocycle = d(mu, omega)?.is_zero();
    let quadratic_vanishes = !failures.iter().any(|(o, _)| *o == 2);
    let expandable = failures.is_empty();
    debug_assert!(!expandable || cocycle);
    Ok(Expandability { expandable, cocycle, quadratic_vanishes, failures, law_at_one: expandable.then_some(plus) })
}
