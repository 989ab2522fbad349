use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::LieLaw;
use crate::error::{Error, Result};
use crate::heintze::{normalize_derivation, HeintzeData};
use crate::linalg::{jordan_chains, Matrix};

/// A real Jordan block of the normalized derivation, real part 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Block {
    /// `J_d(1)`.
    Real { d: usize },
    /// `J′_{2d}(1 + iτ)`.
    Complex { d: usize, tau: f64 },
}

impl Block {
    pub fn size(&self) -> usize {
        match *self {
            Block::Real { d } => d,
            Block::Complex { d, .. } => 2 * d,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Block::Real { d } => write!(f, "J{d}"),
            Block::Complex { d, tau } => write!(f, "C{d}:{tau}"),
        }
    }
}

/// Ordered blocks, written `C1:1,J2,J1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockLayout(pub Vec<Block>);

impl BlockLayout {
    pub fn dim(&self) -> usize {
        self.0.iter().map(Block::size).sum()
    }

    /// Complex blocks first, then real blocks of size > 1, then the 1×1 blocks.
    pub fn canonical(mut self) -> Self {
        self.0.sort_by_key(|b| match *b {
            Block::Complex { d, .. } => (0, usize::MAX - d),
            Block::Real { d } if d > 1 => (1, usize::MAX - d),
            Block::Real { .. } => (2, 0),
        });
        self
    }

    /// Layout of a real-spectrum `α` whose eigenvalues coincide after normalization.
    pub fn from_matrix(alpha: &Matrix) -> Result<Self> {
        let n = alpha.rows();
        let norm = normalize_derivation(alpha)?;
        let e = norm.exact.ok_or_else(|| Error::Frame("irrational spectrum".into()))?;
        if !crate::linalg::Poly::charpoly(&e).all_roots_real() {
            return Err(Error::Frame("non-real spectrum; give complex blocks through a layout".into()));
        }
        let nil = e.sub(&Matrix::identity(n))?;
        if !nil.pow(n as u32)?.is_zero() {
            return Err(Error::Frame("uneven real parts".into()));
        }
        Ok(BlockLayout(jordan_chains(&nil)?.iter().map(|c| Block::Real { d: c.len() }).collect()).canonical())
    }
}

impl FromStr for BlockLayout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for tok in s.split([',', '+', ' ']).filter(|t| !t.is_empty()) {
            let bad = || Error::Parse(format!("block {tok:?}: expected J<d> or C<d>:<tau>"));
            let block = if let Some(d) = tok.strip_prefix('J') {
                Block::Real { d: d.parse().map_err(|_| bad())? }
            } else if let Some(rest) = tok.strip_prefix('C') {
                let (d, tau) = rest.split_once(':').ok_or_else(bad)?;
                Block::Complex { d: d.parse().map_err(|_| bad())?, tau: tau.parse().map_err(|_| bad())? }
            } else {
                return Err(bad());
            };
            if block.size() == 0 {
                return Err(bad());
            }
            blocks.push(block);
        }
        if blocks.is_empty() {
            return Err(Error::Parse("empty block layout".into()));
        }
        Ok(BlockLayout(blocks))
    }
}

impl fmt::Display for BlockLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Block::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Left-invariant metric on `ℝ^{n−1} ⋊_α ℝ` making `𝓕_ε` and `T` orthonormal.
///
/// Coordinates: `0..n−1` along `𝓕_ε`, the last one along `T`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricFrame {
    pub eps: f64,
    pub layout: BlockLayout,
    /// `ad(T)` on `[𝔰,𝔰]` in `𝓕_ε`.
    pub alpha: Vec<Vec<f64>>,
}

impl MetricFrame {
    pub fn new(layout: BlockLayout, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Frame(format!("ε = {eps} is not positive")));
        }
        let m = layout.dim();
        let mut a = vec![vec![0.0; m]; m];
        let mut at = 0;
        for b in &layout.0 {
            match *b {
                Block::Real { d } => {
                    for i in 0..d {
                        a[at + i][at + i] = 1.0;
                        if i + 1 < d {
                            a[at + i][at + i + 1] = eps;
                        }
                    }
                }
                Block::Complex { d, tau } => {
                    for i in 0..d {
                        let p = at + 2 * i;
                        a[p][p] = 1.0;
                        a[p + 1][p + 1] = 1.0;
                        a[p][p + 1] = tau;
                        a[p + 1][p] = -tau;
                        if i + 1 < d {
                            a[p][p + 2] = eps;
                            a[p + 1][p + 3] = eps;
                        }
                    }
                }
            }
            at += b.size();
        }
        Ok(MetricFrame { eps, layout, alpha: a })
    }

    pub fn from_matrix(alpha: &Matrix, eps: f64) -> Result<Self> {
        MetricFrame::new(BlockLayout::from_matrix(alpha)?, eps)
    }

    /// Rejects nonabelian nilpotent parts.
    pub fn from_heintze(h: &HeintzeData, eps: f64) -> Result<Self> {
        if h.nilradical != LieLaw::abelian(h.nilradical.dim()) {
            return Err(Error::Frame("nonabelian nilpotent part".into()));
        }
        MetricFrame::from_matrix(&h.alpha, eps)
    }

    /// `dim 𝔰 = dim [𝔰,𝔰] + 1`.
    pub fn dim(&self) -> usize {
        self.alpha.len() + 1
    }
}

/// Symmetric part `D`, skew part `S` of `ad(T)` and `N = D² + [D, S]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameMatrices {
    pub d: Vec<Vec<f64>>,
    pub s: Vec<Vec<f64>>,
    pub n: Vec<Vec<f64>>,
}

pub(crate) fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

pub fn frame_matrices(frame: &MetricFrame) -> FrameMatrices {
    let a = &frame.alpha;
    let m = a.len();
    let d: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| (a[i][j] + a[j][i]) / 2.0).collect()).collect();
    let s: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| (a[i][j] - a[j][i]) / 2.0).collect()).collect();
    let d2 = mat_mul(&d, &d);
    let ds = mat_mul(&d, &s);
    let sd = mat_mul(&s, &d);
    let n = (0..m).map(|i| (0..m).map(|j| d2[i][j] + ds[i][j] - sd[i][j]).collect()).collect();
    FrameMatrices { d, s, n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn max_dev_from_identity(m: &[Vec<f64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, r) in m.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                worst = worst.max((x - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    #[test]
    fn identity_frame() {
        for eps in [1.0, 0.1] {
            let f = frame_matrices(&MetricFrame::new("J1,J1,J1".parse().unwrap(), eps).unwrap());
            assert_eq!(max_dev_from_identity(&f.d), 0.0);
            assert_eq!(max_dev_from_identity(&f.n), 0.0);
            assert!(f.s.iter().flatten().all(|x| *x == 0.0));
        }
    }

    #[test]
    fn jordan_two() {
        let eps = 0.3;
        let f = frame_matrices(&MetricFrame::from_matrix(&Matrix::jordan(2, int(1)), eps).unwrap());
        assert_eq!(f.d, vec![vec![1.0, eps / 2.0], vec![eps / 2.0, 1.0]]);
        assert_eq!(f.s, vec![vec![0.0, eps / 2.0], vec![-eps / 2.0, 0.0]]);
    }

    #[test]
    fn n_tends_to_identity() {
        let layout = BlockLayout::from_matrix(&Matrix::jordan(3, int(4))).unwrap();
        assert_eq!(layout.to_string(), "J3");
        let dev: Vec<f64> = [0.1, 0.01]
            .iter()
            .map(|&e| max_dev_from_identity(&frame_matrices(&MetricFrame::new(layout.clone(), e).unwrap()).n) / e)
            .collect();
        // ‖N − I‖ ≤ C ε with the same C at both scales.
        assert!(dev.iter().all(|&c| c < 2.0), "{dev:?}");
    }

    #[test]
    fn layouts() {
        let l: BlockLayout = "J1, C1:1 ,J2".parse().unwrap();
        assert_eq!(l.dim(), 5);
        assert_eq!(l.canonical().to_string(), "C1:1,J2,J1");
        assert!("K2".parse::<BlockLayout>().is_err());
        let uneven = Matrix::diag_i64(&[1, 2]);
        assert!(matches!(BlockLayout::from_matrix(&uneven), Err(Error::Frame(_))));
        let rot = Matrix::from_i64(&[&[1, 1], &[-1, 1]]);
        assert!(matches!(BlockLayout::from_matrix(&rot), Err(Error::Frame(_))));
        let h = crate::heintze::heintze_check(&crate::catalog("heis(3)").unwrap(), &Matrix::diag_i64(&[1, 1, 2])).unwrap();
        assert!(matches!(MetricFrame::from_heintze(&h, 0.1), Err(Error::Frame(_))));
    }
}
