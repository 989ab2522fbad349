//! Univariate polynomials over the rationals: characteristic and minimal
//! polynomials, Sturm counts, rational roots and the Routh–Hurwitz test.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x − r`.
    pub fn linear(r: &Scalar) -> Self {
        Self::new(vec![-r.clone(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + scalar::to_f64(c))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, x) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * x;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * scalar::int(i as i64)).collect())
    }

    /// `p / gcd(p, p')`, monic: same roots, all simple.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree() == 0 {
            return self.monic();
        }
        self.divrem(&self.gcd(&self.derivative())).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `p(a·x + b)`.
    pub fn compose_linear(&self, a: &Scalar, b: &Scalar) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        // Sign changes at −∞ and +∞ come from leading coefficients.
        let at = |pos: bool| -> usize {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| {
                    let s = if p.leading().is_positive() { 1 } else { -1 };
                    if !pos && p.degree() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        at(false) - at(true)
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&scalar::int(-1)));
        }
        seq
    }

    /// True iff every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let sf = self.squarefree_part();
        sf.count_real_roots() == sf.degree()
    }

    /// Rational roots with multiplicities, ascending.
    pub fn rational_roots(&self) -> Vec<(Scalar, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.degree() > 0 && p.coeff(0).is_zero() {
            p = Poly::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Scalar::zero(), zero_mult));
        }
        let ints = p.primitive_integer_coeffs();
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonempty").abs();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [1i64, -1] {
                        let r = Scalar::new(&num * BigInt::from(sign), den.clone());
                        if out.iter().any(|(x, _)| *x == r) {
                            continue;
                        }
                        let mut m = 0;
                        let lin = Poly::linear(&r);
                        loop {
                            let (q, rem) = p.divrem(&lin);
                            if !rem.is_zero() {
                                break;
                            }
                            p = q;
                            m += 1;
                        }
                        if m > 0 {
                            out.push((r, m));
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The factor left after dividing out every rational root.
    pub fn without_rational_roots(&self) -> Poly {
        let mut p = self.clone();
        for (r, m) in self.rational_roots() {
            p = p.divrem(&Poly::linear(&r).pow(m)).0;
        }
        p.monic()
    }

    /// Integer coefficients with gcd 1 and the same roots.
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// All roots in the open left half-plane (Routh array, exact).
    pub fn is_hurwitz_stable(&self) -> bool {
        let n = self.degree();
        if self.is_zero() {
            return false;
        }
        if n == 0 {
            return true;
        }
        // Descending coefficients a_0 x^n + a_1 x^{n−1} + …
        let a: Vec<Scalar> = self.coeffs.iter().rev().cloned().collect();
        let mut prev: Vec<Scalar> = a.iter().step_by(2).cloned().collect();
        let mut cur: Vec<Scalar> = a.iter().skip(1).step_by(2).cloned().collect();
        let mut first = vec![prev[0].clone()];
        for _ in 0..n {
            let Some(c0) = cur.first().cloned() else { return false };
            if c0.is_zero() {
                return false;
            }
            first.push(c0.clone());
            let next: Vec<Scalar> = (0..prev.len().saturating_sub(1))
                .map(|i| {
                    let p1 = prev.get(i + 1).cloned().unwrap_or_else(Scalar::zero);
                    let c1 = cur.get(i + 1).cloned().unwrap_or_else(Scalar::zero);
                    (&c0 * &p1 - &prev[0] * &c1) / &c0
                })
                .collect();
            prev = cur;
            cur = next;
        }
        let s = first[0].is_positive();
        first.iter().all(|x| !x.is_zero() && x.is_positive() == s)
    }

    /// All roots in the open right half-plane.
    pub fn all_roots_positive_real_part(&self) -> bool {
        self.compose_linear(&scalar::int(-1), &scalar::zero()).is_hurwitz_stable()
    }

    /// Numerical roots (Durand–Kerner on the squarefree part).
    pub fn numeric_roots(&self) -> Vec<Complex64> {
        let p = self.squarefree_part();
        let n = p.degree();
        if n == 0 {
            return Vec::new();
        }
        let c: Vec<f64> = p.coeffs.iter().map(scalar::to_f64).collect();
        let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
        let radius = 1.0 + c[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (radius / 2.0).max(0.5)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = eval(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        // A few Newton polishes per root.
        let dp = p.derivative();
        for r in &mut z {
            for _ in 0..3 {
                let d = dp.eval_f64(*r);
                if d.norm() > 0.0 {
                    *r -= p.eval_f64(*r) / d;
                }
            }
        }
        z
    }

    /// Characteristic polynomial `det(xI − M)` (Faddeev–LeVerrier).
    pub fn charpoly(m: &Matrix) -> Poly {
        assert!(m.is_square(), "charpoly of a non-square matrix");
        let n = m.rows();
        let mut c = vec![Scalar::zero(); n + 1];
        c[n] = Scalar::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            let ident = Matrix::identity(n).scale(&c[n - k + 1]);
            mk = m.mul(&mk).expect("square").add(&ident).expect("square");
            let am = m.mul(&mk).expect("square");
            c[n - k] = -am.trace() / scalar::int(k as i64);
        }
        Poly::new(c)
    }

    /// Minimal polynomial of a square matrix (monic).
    pub fn minpoly(m: &Matrix) -> Poly {
        let n = m.rows();
        let flat = |a: &Matrix| -> Vec<Scalar> { a.to_rows().into_iter().flatten().collect() };
        let mut powers = vec![flat(&Matrix::identity(n))];
        let mut cur = Matrix::identity(n);
        for _ in 0..n {
            cur = cur.mul(m).expect("square");
            powers.push(flat(&cur));
            let kernel = Matrix::from_cols(&powers).expect("same length").kernel();
            if let Some(k) = kernel.first() {
                return Poly::new(k.clone()).monic();
            }
        }
        Poly::charpoly(m)
    }
}

/// Positive divisors of |n| (trial division).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let abs = c.abs();
            let coef = if abs.is_one() && i > 0 { String::new() } else { scalar::format(&abs) };
            let sep = if coef.is_empty() || mono.is_empty() { "" } else { "*" };
            terms.push((c.is_negative(), format!("{coef}{sep}{mono}")));
        }
        for (k, (neg, t)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{t}")?,
                (0, false) => write!(f, "{t}")?,
                (_, true) => write!(f, " - {t}")?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

/// Rounds a float to `f64` for display and JSON.
pub fn approx(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| scalar::to_f64(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn charpoly_of_jordan() {
        let p = Poly::charpoly(&Matrix::jordan(3, int(1)));
        assert_eq!(p, Poly::linear(&int(1)).pow(3));
        assert_eq!(Poly::minpoly(&Matrix::jordan(3, int(1))), p);
        assert_eq!(Poly::minpoly(&Matrix::identity(3)), Poly::linear(&int(1)));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x − 1/2)^2 (x + 3) x
        let p = Poly::linear(&frac(1, 2)).pow(2).mul(&Poly::linear(&int(-3))).mul(&Poly::x());
        assert_eq!(p.rational_roots(), vec![(int(-3), 1), (int(0), 1), (frac(1, 2), 2)]);
        let q = Poly::from_i64(&[-2, 0, 1]); // x^2 − 2
        assert!(q.rational_roots().is_empty());
        assert_eq!(q.count_real_roots(), 2);
        assert_eq!(q.without_rational_roots(), q);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_i64(&[1, 0, 1]).count_real_roots(), 0);
        assert!(!Poly::from_i64(&[1, 0, 1]).all_roots_real());
        assert!(Poly::linear(&int(2)).pow(3).all_roots_real());
    }

    #[test]
    fn routh_hurwitz() {
        assert!(Poly::from_i64(&[2, 3, 1]).is_hurwitz_stable()); // roots −1, −2
        assert!(!Poly::from_i64(&[1, 0, 1]).is_hurwitz_stable()); // ±i
        assert!(Poly::from_i64(&[2, -2, 1]).all_roots_positive_real_part()); // 1 ± i
        assert!(!Poly::from_i64(&[-2, 1, 1]).is_hurwitz_stable()); // 1, −2
        // x^3 + x^2 + x + 1 has ±i: zero in the Routh column
        assert!(!Poly::from_i64(&[1, 1, 1, 1]).is_hurwitz_stable());
    }

    #[test]
    fn numeric_roots_match() {
        let p = Poly::from_i64(&[2, -2, 1]);
        let mut rs = p.numeric_roots();
        rs.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((rs[0] - Complex64::new(1.0, -1.0)).norm() < 1e-12);
        assert!((rs[1] - Complex64::new(1.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::new(vec![frac(1, 2), int(-3)]).to_string(), "-3*x + 1/2");
    }
}
