//! Chebyshev identities and the conformal dimension of Fuchsian buildings `I_{p,q}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Right-angled `p`-gons, `q` chambers per edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BuildingParams {
    pub p: u32,
    pub q: u32,
}

impl BuildingParams {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 5 || q < 2 {
            return Err(Error::Building(format!("need p ≥ 5 and q ≥ 2, got p = {p}, q = {q}")));
        }
        Ok(BuildingParams { p, q })
    }

    /// `(p − 2)/2`.
    pub fn chebyshev_argument(&self) -> Scalar {
        scalar::frac(self.p as i64 - 2, 2)
    }
}

/// `T_k(x)` by the three-term recurrence.
pub fn chebyshev(k: usize, x: &Scalar) -> Scalar {
    chebyshev_table(k, x).pop().expect("nonempty")
}

/// `T_0(x), …, T_k(x)`.
pub fn chebyshev_table(k: usize, x: &Scalar) -> Vec<Scalar> {
    let mut t = vec![Scalar::one(), x.clone()];
    let two_x = x * scalar::int(2);
    while t.len() <= k {
        let n = t.len();
        let next = &two_x * &t[n - 1] - &t[n - 2];
        t.push(next);
    }
    t.truncate(k + 1);
    t
}

/// `τ = a + √r`, the larger root of `τ + 1/τ = p − 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticSurd {
    #[serde(with = "scalar::serde_scalar")]
    pub rational: Scalar,
    #[serde(with = "scalar::serde_scalar")]
    pub radicand: Scalar,
}

impl QuadraticSurd {
    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.rational) + scalar::to_f64(&self.radicand).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildingCdim {
    pub params: BuildingParams,
    pub cdim: f64,
    /// Exact value when the logarithm term vanishes (`q = 2`).
    #[serde(serialize_with = "ser_exact")]
    pub exact: Option<Scalar>,
    pub tau: QuadraticSurd,
}

fn ser_exact<S: serde::Serializer>(x: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&scalar::format(v)),
        None => s.serialize_none(),
    }
}

/// `1 + ln(q − 1) / arcosh((p − 2)/2)`.
pub fn building_cdim(b: BuildingParams) -> BuildingCdim {
    let a = b.chebyshev_argument();
    let tau = QuadraticSurd { radicand: &a * &a - Scalar::one(), rational: a };
    let (cdim, exact) = if b.q == 2 { (1.0, Some(Scalar::one())) } else { (1.0 + ((b.q - 1) as f64).ln() / tau.to_f64().ln(), None) };
    BuildingCdim { params: b, cdim, exact, tau }
}

/// A pair `(M, N)` with `(q−1)^N = (q′−1)^M` and `T_N((p−2)/2) = T_M((p′−2)/2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityWitness {
    pub m: usize,
    pub n: usize,
    /// `(q−1)^N`.
    pub power: String,
    #[serde(with = "scalar::serde_scalar")]
    pub chebyshev: Scalar,
}

/// Exact `a^n = b^m` for positive integers, pruned by coprimality.
fn power_equal(a: u64, n: usize, b: u64, m: usize) -> bool {
    if a == 1 || b == 1 {
        return a == b;
    }
    if a.gcd(&b) == 1 {
        return false;
    }
    Pow::pow(BigInt::from(a), n) == Pow::pow(BigInt::from(b), m)
}

fn witnesses(b1: BuildingParams, b2: BuildingParams, bound: usize, primitive: bool) -> Result<Vec<IdentityWitness>> {
    if bound > 64 {
        return Err(Error::Building(format!("bound {bound} exceeds 64")));
    }
    let t1 = chebyshev_table(bound, &b1.chebyshev_argument());
    let t2 = chebyshev_table(bound, &b2.chebyshev_argument());
    let (a, b) = ((b1.q - 1) as u64, (b2.q - 1) as u64);
    let mut out = Vec::new();
    for m in 1..=bound {
        for n in 1..=bound {
            if primitive && m.gcd(&n) != 1 {
                continue;
            }
            if power_equal(a, n, b, m) && t1[n] == t2[m] {
                out.push(IdentityWitness { m, n, power: Pow::pow(BigInt::from(a), n).to_string(), chebyshev: t1[n].clone() });
            }
        }
    }
    Ok(out)
}

/// Primitive witnesses (`gcd(M, N) = 1`) with `M, N ≤ bound`; every other witness is a multiple.
pub fn tyson_identities(b1: BuildingParams, b2: BuildingParams, bound: usize) -> Result<Vec<IdentityWitness>> {
    witnesses(b1, b2, bound, true)
}

/// Every witness with `M, N ≤ bound`.
pub fn tyson_identities_all(b1: BuildingParams, b2: BuildingParams, bound: usize) -> Result<Vec<IdentityWitness>> {
    witnesses(b1, b2, bound, false)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchHit {
    pub first: BuildingParams,
    pub second: BuildingParams,
    pub witnesses: Vec<IdentityWitness>,
    pub cdim_first: f64,
    pub cdim_second: f64,
}

pub const CDIM_TOLERANCE: f64 = 1e-9;

/// Distinct pairs with `5 ≤ p ≤ p_max`, `3 ≤ q ≤ q_max` admitting a witness, in lexicographic order.
///
/// Every hit is checked against the forward implication (equal conformal dimension).
pub fn equal_cdim_search(p_max: u32, q_max: u32, bound: usize) -> Result<Vec<SearchHit>> {
    if p_max > 64 {
        return Err(Error::Building(format!("p_max {p_max} exceeds 64")));
    }
    let params: Vec<BuildingParams> = (5..=p_max).flat_map(|p| (3..=q_max).map(move |q| BuildingParams { p, q })).collect();
    let pairs: Vec<(BuildingParams, BuildingParams)> =
        params.iter().enumerate().flat_map(|(i, a)| params[i + 1..].iter().map(move |b| (*a, *b))).collect();
    let hits: Vec<Option<SearchHit>> = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<SearchHit>> {
            let w = tyson_identities(a, b, bound)?;
            if w.is_empty() {
                return Ok(None);
            }
            let (c1, c2) = (building_cdim(a).cdim, building_cdim(b).cdim);
            if (c1 - c2).abs() > CDIM_TOLERANCE {
                return Err(Error::Invalid(format!("witness for {a:?}, {b:?} but cdims {c1} ≠ {c2}")));
            }
            Ok(Some(SearchHit { first: a, second: b, witnesses: w, cdim_first: c1, cdim_second: c2 }))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}
