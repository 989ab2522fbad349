//! Named laws.
//!
//! Names: `b(n,R)`, `b(n,C)`, `b(n,H)`, `heis(2k+1)`, `l_4_3`, `l_6_6`,
//! `l_6_7`, `l_6_11`, `l_6_12`, `l_6_13`, `s_prime`, `s_second`,
//! `h2c_solvable`, `aff`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{default_labels, LieLaw};
use crate::error::{Error, Result};

/// Instances used by whole-catalog checks.
pub const DEFAULT_ENTRIES: &[&str] = &[
    "b(2,R)",
    "b(3,R)",
    "b(4,R)",
    "b(2,C)",
    "b(3,C)",
    "b(4,C)",
    "b(2,H)",
    "heis(3)",
    "heis(5)",
    "l_4_3",
    "l_6_6",
    "l_6_7",
    "l_6_11",
    "l_6_12",
    "l_6_13",
    "s_prime",
    "s_second",
    "h2c_solvable",
    "aff",
];

fn table() -> &'static BTreeMap<&'static str, LieLaw> {
    static TABLE: OnceLock<BTreeMap<&'static str, LieLaw>> = OnceLock::new();
    TABLE.get_or_init(|| DEFAULT_ENTRIES.iter().map(|&n| (n, build(n).expect("default entries are valid"))).collect())
}

/// Looks up a catalog law by name.
pub fn catalog(name: &str) -> Result<LieLaw> {
    let key = name.replace(' ', "");
    if let Some(l) = table().get(key.as_str()) {
        return Ok(l.clone());
    }
    build(&key)
}

fn build(name: &str) -> Result<LieLaw> {
    if let Some(args) = name.strip_prefix("b(").and_then(|s| s.strip_suffix(')')) {
        let (n, field) = args.split_once(',').ok_or_else(|| Error::UnknownCatalog(name.into()))?;
        let n: usize = n.parse().map_err(|_| Error::CatalogParameter(format!("n in {name}")))?;
        return match field {
            "R" => b_real(n),
            "C" => b_complex(n),
            "H" => b_quaternion(n),
            _ => Err(Error::UnknownCatalog(name.into())),
        };
    }
    if let Some(arg) = name.strip_prefix("heis(").and_then(|s| s.strip_suffix(')')) {
        let d: usize = arg.parse().map_err(|_| Error::CatalogParameter(format!("dimension in {name}")))?;
        return heis(d);
    }
    match name {
        "l_4_3" => Ok(filiform4()),
        "l_6_7" => Ok(l6(&[])),
        "l_6_6" => Ok(l6(&[Xi::One])),
        "l_6_12" => Ok(l6(&[Xi::Two])),
        "l_6_13" => Ok(l6(&[Xi::Three])),
        "l_6_11" => Ok(l6(&[Xi::One, Xi::Two])),
        "s_prime" => Ok(four_dim(true)),
        "h2c_solvable" => Ok(four_dim(false)),
        "s_second" => Ok(s_second()),
        "aff" => b_real(2),
        _ => Err(Error::UnknownCatalog(name.into())),
    }
}

/// `ℝ^{n−1} ⋊ ℝ` with the generator acting by the identity.
pub fn b_real(n: usize) -> Result<LieLaw> {
    if !(2..=16).contains(&n) {
        return Err(Error::CatalogParameter(format!("b(n,R) needs 2 ≤ n ≤ 16, got {n}")));
    }
    let m = n - 1;
    let mut labels = default_labels(m);
    labels.push("S".into());
    let mut b = LieLaw::builder(labels);
    for i in 0..m {
        b.add_i64(m, i, i, 1);
    }
    Ok(b.build())
}

/// Basis `X_1..X_m, Y_1..Y_m, T, S` with `z_a = X_a + iY_a`.
pub fn b_complex(n: usize) -> Result<LieLaw> {
    if !(2..=6).contains(&n) {
        return Err(Error::CatalogParameter(format!("b(n,C) needs 2 ≤ n ≤ 6, got {n}")));
    }
    let m = n - 1;
    let mut labels: Vec<String> = (1..=m).map(|a| format!("X{a}")).collect();
    labels.extend((1..=m).map(|a| format!("Y{a}")));
    labels.push("T".into());
    labels.push("S".into());
    let (t, s) = (2 * m, 2 * m + 1);
    let mut b = LieLaw::builder(labels);
    for a in 0..m {
        // Im(z z̄') = y x' − x y'
        b.add_i64(a, m + a, t, -1);
        b.add_i64(s, a, a, 1);
        b.add_i64(s, m + a, m + a, 1);
    }
    b.add_i64(s, t, t, 2);
    Ok(b.build())
}

/// Quaternion product of basis units 1, i, j, k as `(sign, unit)`.
fn quat_mul(p: usize, q: usize) -> (i64, usize) {
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    TABLE[p][q]
}

/// Basis `X_a, I_a, J_a, K_a` (a = 1..m), then `Ti, Tj, Tk, S`.
pub fn b_quaternion(n: usize) -> Result<LieLaw> {
    if !(2..=4).contains(&n) {
        return Err(Error::CatalogParameter(format!("b(n,H) needs 2 ≤ n ≤ 4, got {n}")));
    }
    let m = n - 1;
    let mut labels = Vec::new();
    for part in ["X", "I", "J", "K"] {
        labels.extend((1..=m).map(|a| format!("{part}{a}")));
    }
    labels.extend(["Ti", "Tj", "Tk", "S"].map(String::from));
    let coord = |part: usize, a: usize| part * m + a;
    let t = |unit: usize| 4 * m + unit - 1;
    let s = 4 * m + 3;
    let mut b = LieLaw::builder(labels);
    for a in 0..m {
        for p in 0..4 {
            b.add_i64(s, coord(p, a), coord(p, a), 1);
            for q in p + 1..4 {
                // e_p · conj(e_q) = −e_p e_q for imaginary e_q.
                let (sign, unit) = quat_mul(p, q);
                let sign = if q == 0 { sign } else { -sign };
                if unit != 0 {
                    b.add_i64(coord(p, a), coord(q, a), t(unit), sign);
                }
            }
        }
    }
    for u in 1..4 {
        b.add_i64(s, t(u), t(u), 2);
    }
    Ok(b.build())
}

/// Heisenberg algebra `X_1..X_k, Y_1..Y_k, Z` with `[X_a, Y_a] = Z`.
pub fn heis(d: usize) -> Result<LieLaw> {
    if d < 3 || d % 2 == 0 || d > 15 {
        return Err(Error::CatalogParameter(format!("heis(d) needs odd 3 ≤ d ≤ 15, got {d}")));
    }
    let k = (d - 1) / 2;
    let labels: Vec<String> = if k == 1 {
        vec!["X".into(), "Y".into(), "Z".into()]
    } else {
        let mut l: Vec<String> = (1..=k).map(|a| format!("X{a}")).collect();
        l.extend((1..=k).map(|a| format!("Y{a}")));
        l.push("Z".into());
        l
    };
    let mut b = LieLaw::builder(labels);
    for a in 0..k {
        b.add_i64(a, k + a, 2 * k, 1);
    }
    Ok(b.build())
}

fn filiform4() -> LieLaw {
    let mut b = LieLaw::builder(default_labels(4));
    b.add_i64(0, 1, 2, 1).add_i64(0, 2, 3, 1);
    b.build()
}

enum Xi {
    One,
    Two,
    Three,
}

/// `μ` of `l_6_7` plus the chosen perturbations.
fn l6(xis: &[Xi]) -> LieLaw {
    let mut b = LieLaw::builder(default_labels(6));
    b.add_i64(0, 1, 2, 1).add_i64(0, 2, 3, 1).add_i64(0, 3, 4, 1);
    for xi in xis {
        match xi {
            Xi::One => {
                b.add_i64(1, 2, 4, 1);
            }
            Xi::Two => {
                b.add_i64(1, 5, 4, 1);
            }
            Xi::Three => {
                b.add_i64(1, 5, 3, 1).add_i64(2, 5, 4, 1);
            }
        }
    }
    b.build()
}

/// Basis `(X, Y, Z, A)`: heis with `A` acting by `diag(1,1,2)`, plus `[A,Y] ∋ X` when `twisted`.
fn four_dim(twisted: bool) -> LieLaw {
    let mut b = LieLaw::builder(vec!["X".into(), "Y".into(), "Z".into(), "A".into()]);
    b.add_i64(0, 1, 2, 1).add_i64(3, 0, 0, 1).add_i64(3, 1, 1, 1).add_i64(3, 2, 2, 2);
    if twisted {
        b.add_i64(3, 1, 0, 1);
    }
    b.build()
}

/// `ℝ³ ⋊ (J₂(1) ⊕ 2)` with generator `X4`.
fn s_second() -> LieLaw {
    let mut b = LieLaw::builder(default_labels(4));
    b.add_i64(3, 0, 0, 1).add_i64(3, 1, 0, 1).add_i64(3, 1, 1, 1).add_i64(3, 2, 2, 2);
    b.build()
}

/// Every known name, parametric families expanded to the default instances.
pub fn names() -> Vec<&'static str> {
    DEFAULT_ENTRIES.to_vec()
}
