use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{spectral_summary, LieLaw, SpectralSummary};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Poly, Subspace};
use crate::scalar::{self, Scalar};

/// Nilpotent `N` with a derivation `α` whose spectrum has positive real part.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeintzeData {
    pub nilradical: LieLaw,
    pub alpha: Matrix,
    pub spectral: SpectralSummary,
}

impl HeintzeData {
    /// The Lie algebra `N ⋊_α ℝ`, with the new generator last.
    pub fn law(&self) -> LieLaw {
        self.nilradical.semidirect_rank_one(&self.alpha).expect("checked derivation")
    }
}

/// Verifies nilpotence of `N`, the Leibniz rule and the Routh–Hurwitz condition on `α`.
pub fn heintze_check(n: &LieLaw, alpha: &Matrix) -> Result<HeintzeData> {
    if alpha.rows() != n.dim() || alpha.cols() != n.dim() {
        return Err(Error::Dimension { expected: n.dim(), got: alpha.rows() });
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if let Some((i, j)) = n.derivation_defect(alpha) {
        return Err(Error::NotDerivation(format!("Leibniz rule fails on basis pair ({i},{j})")));
    }
    let spectral = spectral_summary(alpha);
    if !spectral.all_roots_positive_real_part {
        return Err(Error::Spectrum(format!("char poly {}", spectral.charpoly)));
    }
    Ok(HeintzeData { nilradical: n.clone(), alpha: alpha.clone(), spectral })
}

/// An exact rational or a floating approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Scalar),
    Approx(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(x) => scalar::to_f64(x),
            Number::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Scalar> {
        match self {
            Number::Exact(x) => Some(x),
            Number::Approx(_) => None,
        }
    }
}

impl std::fmt::Display for Number {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Number::Exact(x) => write!(f, "{}", scalar::format(x)),
            Number::Approx(x) => write!(f, "{x:.17}"),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Number::Exact(x) => s.serialize_str(&scalar::format(x)),
            Number::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// Tolerance of the numeric fallback.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// `[α] = α / m`, `m` the least real part of the spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizedDerivation {
    pub min_real_part: Number,
    /// Present when `m` is rational.
    pub exact: Option<Matrix>,
    pub matrix: Vec<Vec<f64>>,
}

impl NormalizedDerivation {
    pub fn exact_or_err(&self) -> Result<&Matrix> {
        self.exact.as_ref().ok_or_else(|| Error::Spectrum(format!("least real part {} is irrational", self.min_real_part)))
    }
}

/// Best rational with denominator at most `max_den`, by continued fractions.
fn nearest_rational(x: f64, max_den: i64) -> Option<Scalar> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-12 || (h1 as f64 / k1 as f64 - x).abs() < 1e-13 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0).then(|| scalar::frac(h1, k1))
}

/// Whether `p` has a root with real part exactly `m`.
fn has_root_with_real_part(p: &Poly, m: &Scalar) -> bool {
    let q = p.compose_linear(&Scalar::one(), m);
    // q(iy) = R(y) + i I(y)
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (k, c) in q.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { c.clone() } else { -c.clone() };
        if k % 2 == 0 {
            re.push(sign);
            im.push(Scalar::zero());
        } else {
            re.push(Scalar::zero());
            im.push(sign);
        }
    }
    let g = Poly::new(re).gcd(&Poly::new(im));
    g.degree() >= 1 && g.count_real_roots() >= 1
}

/// Least real part of the spectrum: exact when a nearby rational is verified, else numeric.
pub fn min_real_part(p: &Poly) -> Number {
    let rational_min = p.rational_roots().into_iter().map(|(r, _)| r).min();
    let roots = p.numeric_roots();
    let numeric = roots.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    if let Some(r) = &rational_min {
        if scalar::to_f64(r) <= numeric + 1e-7 {
            return Number::Exact(r.clone());
        }
    }
    match nearest_rational(numeric, 1_000_000) {
        Some(c) if (scalar::to_f64(&c) - numeric).abs() < 1e-7 && has_root_with_real_part(p, &c) => Number::Exact(c),
        _ => Number::Approx(numeric),
    }
}

/// Divides `α` by the least real part of its spectrum; no Jordan re-blocking.
pub fn normalize_derivation(alpha: &Matrix) -> Result<NormalizedDerivation> {
    let p = Poly::charpoly(alpha);
    if !p.all_roots_positive_real_part() {
        return Err(Error::Spectrum(format!("char poly {p}")));
    }
    let m = min_real_part(&p);
    Ok(match &m {
        Number::Exact(x) => {
            let e = alpha.scale(&x.recip());
            NormalizedDerivation { matrix: e.to_f64(), exact: Some(e), min_real_part: m }
        }
        Number::Approx(x) => {
            let matrix = alpha.to_f64().into_iter().map(|r| r.into_iter().map(|v| v / x).collect()).collect();
            NormalizedDerivation { min_real_part: m, exact: None, matrix }
        }
    })
}

/// Topological, conformal and geometric dimensions of the boundary, and the curvature bound they force.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryInvariants {
    pub topdim: usize,
    pub cdim: Number,
    pub geodim: usize,
    /// `−((geodim − 1)/cdim)²`.
    pub pansu_bound: Number,
}

pub fn boundary_invariants(h: &HeintzeData) -> Result<BoundaryInvariants> {
    let topdim = h.nilradical.dim();
    let geodim = topdim + 1;
    let norm = normalize_derivation(&h.alpha)?;
    let (cdim, pansu_bound) = match &norm.exact {
        Some(e) => {
            let c = e.trace();
            let r = scalar::int(topdim as i64) / &c;
            (Number::Exact(c), Number::Exact(-(&r * &r)))
        }
        None => {
            let c = scalar::to_f64(&h.alpha.trace()) / norm.min_real_part.to_f64();
            (Number::Approx(c), Number::Approx(-(topdim as f64 / c).powi(2)))
        }
    };
    Ok(BoundaryInvariants { topdim, cdim, geodim, pansu_bound })
}

/// Heintze amalgam: `N₁ × N₂` with derivation `[α₁] ⊕ λ[α₂]`.
pub fn amalgam(h1: &HeintzeData, h2: &HeintzeData, lambda: &Scalar) -> Result<HeintzeData> {
    if !lambda.is_positive() {
        return Err(Error::Invalid(format!("amalgam weight {} is not positive", scalar::format(lambda))));
    }
    let a1 = normalize_derivation(&h1.alpha)?;
    let a2 = normalize_derivation(&h2.alpha)?;
    let alpha = Matrix::block_diag(&[a1.exact_or_err()?.clone(), a2.exact_or_err()?.scale(lambda)]);
    heintze_check(&h1.nilradical.direct_sum(&h2.nilradical), &alpha)
}

/// Trait summary; `carnot_type` is undecided when the normalization is irrational.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeintzeTraits {
    pub purely_real: bool,
    pub carnot_type: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Lie subalgebra generated by `v`.
pub fn lie_span(l: &LieLaw, v: &Subspace) -> Subspace {
    let mut s = v.clone();
    loop {
        let next = s.sum(&l.bracket_spaces(v, &s));
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

pub fn heintze_traits(h: &HeintzeData) -> HeintzeTraits {
    let purely_real = h.spectral.charpoly.all_roots_real();
    let norm = normalize_derivation(&h.alpha).expect("checked spectrum");
    match norm.exact {
        Some(e) => {
            let n = e.rows();
            let eig = Subspace::span(n, &e.sub(&Matrix::identity(n)).expect("square").kernel()).expect("ambient");
            HeintzeTraits { purely_real, carnot_type: Some(lie_span(&h.nilradical, &eig).dim() == n), note: None }
        }
        None => HeintzeTraits {
            purely_real,
            carnot_type: None,
            note: Some(format!("least real part {} is irrational", norm.min_real_part)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::scalar::{frac, int};

    fn heis_112() -> HeintzeData {
        heintze_check(&catalog("heis(3)").unwrap(), &Matrix::diag_i64(&[1, 1, 2])).unwrap()
    }

    #[test]
    fn checks() {
        assert!(heintze_check(&LieLaw::abelian(3), &Matrix::diag_i64(&[1, 1, 2])).is_ok());
        heis_112();
        let rot = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(heintze_check(&LieLaw::abelian(2), &rot), Err(Error::Spectrum(_))));
        assert!(matches!(heintze_check(&catalog("heis(3)").unwrap(), &Matrix::diag_i64(&[1, 1, 1])), Err(Error::NotDerivation(_))));
        assert!(matches!(heintze_check(&catalog("b(2,R)").unwrap(), &Matrix::identity(2)), Err(Error::NotNilpotent)));
    }

    #[test]
    fn normalization() {
        let n = normalize_derivation(&Matrix::diag_i64(&[2, 2, 4])).unwrap();
        assert_eq!(n.exact.unwrap(), Matrix::diag_i64(&[1, 1, 2]));
        let j = normalize_derivation(&Matrix::jordan(2, int(3))).unwrap();
        let e = j.exact.unwrap();
        assert_eq!(e, Matrix::jordan(2, int(3)).scale(&frac(1, 3)));
        assert_eq!(spectral_summary(&e).single_real_eigenvalue, Some(int(1)));
        let d = normalize_derivation(&Matrix::diag(&[int(1), frac(3, 2)])).unwrap();
        assert_eq!(d.exact.unwrap(), Matrix::diag(&[int(1), frac(3, 2)]));
        // Complex pair 2 ± i next to 3: m = 2 is found exactly.
        let c = Matrix::block_diag(&[Matrix::from_i64(&[&[2, -1], &[1, 2]]), Matrix::diag_i64(&[3])]);
        assert_eq!(normalize_derivation(&c).unwrap().min_real_part, Number::Exact(int(2)));
        // x² − 4x + 2: roots 2 ± √2.
        let irr = Matrix::from_i64(&[&[0, -2], &[1, 4]]);
        match normalize_derivation(&irr).unwrap().min_real_part {
            Number::Approx(x) => assert!((x - (2.0 - 2f64.sqrt())).abs() < NUMERIC_TOLERANCE),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariants() {
        let b = boundary_invariants(&heis_112()).unwrap();
        assert_eq!(b.cdim, Number::Exact(int(4)));
        assert_eq!(b.pansu_bound, Number::Exact(frac(-9, 16)));
        assert_eq!((b.topdim, b.geodim), (3, 4));
        for n in 2..6 {
            let h = heintze_check(&LieLaw::abelian(n - 1), &Matrix::identity(n - 1)).unwrap();
            let b = boundary_invariants(&h).unwrap();
            assert_eq!(b.cdim, Number::Exact(int(n as i64 - 1)));
            assert_eq!(b.topdim, n - 1);
        }
    }

    #[test]
    fn amalgams() {
        let b3 = heintze_check(&LieLaw::abelian(2), &Matrix::identity(2)).unwrap();
        let b2 = heintze_check(&LieLaw::abelian(1), &Matrix::diag_i64(&[5])).unwrap();
        let a = amalgam(&b3, &b2, &int(2)).unwrap();
        assert_eq!(a.alpha, Matrix::diag_i64(&[1, 1, 2]));
        let c = |h: &HeintzeData| boundary_invariants(h).unwrap().cdim.exact().unwrap().clone();
        assert_eq!(c(&a), c(&b3) + int(2) * c(&b2));
        let g = amalgam(&b2, &b2, &int(1)).unwrap();
        assert_eq!(g.law(), catalog("b(3,R)").unwrap());
    }

    #[test]
    fn traits() {
        let b = heintze_check(&LieLaw::abelian(3), &Matrix::identity(3)).unwrap();
        assert_eq!(heintze_traits(&b), HeintzeTraits { purely_real: true, carnot_type: Some(true), note: None });
        assert_eq!(heintze_traits(&heis_112()).carnot_type, Some(true));
        let rot = heintze_check(&LieLaw::abelian(2), &Matrix::from_i64(&[&[1, 1], &[-1, 1]])).unwrap();
        assert!(!heintze_traits(&rot).purely_real);
        let r3 = heintze_check(&LieLaw::abelian(3), &Matrix::diag_i64(&[1, 1, 2])).unwrap();
        assert_eq!(heintze_traits(&r3).carnot_type, Some(false));
    }
}
