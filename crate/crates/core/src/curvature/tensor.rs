use crate::error::{Error, Result};

use super::frame::{frame_matrices, FrameMatrices, MetricFrame};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn apply(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Riemann tensor of a [`MetricFrame`] with `D` and `N` cached.
#[derive(Clone, Debug)]
pub struct CurvatureModel {
    pub frame: MetricFrame,
    pub matrices: FrameMatrices,
}

impl CurvatureModel {
    pub fn new(frame: MetricFrame) -> Self {
        let matrices = frame_matrices(&frame);
        CurvatureModel { frame, matrices }
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// `R_{X,Y}Z`; underlined vectors are projections to `[𝔰,𝔰]`, the last coordinate is along `T`.
    pub fn tensor(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let m = self.dim() - 1;
        let (xl, xt) = (&x[..m], x[m]);
        let (yl, yt) = (&y[..m], y[m]);
        let (zl, zt) = (&z[..m], z[m]);
        let dx = apply(&self.matrices.d, xl);
        let dy = apply(&self.matrices.d, yl);
        let nx = apply(&self.matrices.n, xl);
        let ny = apply(&self.matrices.n, yl);
        let w: Vec<f64> = ny.iter().zip(&nx).map(|(a, b)| xt * a - yt * b).collect();
        let (cy, cx) = (dot(&dy, zl), dot(&dx, zl));
        let mut out: Vec<f64> = (0..m).map(|i| -cy * dx[i] + cx * dy[i] + zt * w[i]).collect();
        out.push(-dot(zl, &w));
        out
    }

    /// `⟨R(u,v)v,u⟩ / (|u|²|v|² − ⟨u,v⟩²)`.
    pub fn sectional(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let gram = dot(u, u) * dot(v, v) - dot(u, v).powi(2);
        if !(gram > 1e-14 * dot(u, u) * dot(v, v)) {
            return Err(Error::DegeneratePlane);
        }
        Ok(dot(&self.tensor(u, v, v), u) / gram)
    }

    /// `|R(X,Y)Z + R(Y,Z)X + R(Z,X)Y|_∞`.
    pub fn bianchi_residual(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        let a = self.tensor(x, y, z);
        let b = self.tensor(y, z, x);
        let c = self.tensor(z, x, y);
        (0..a.len()).map(|i| (a[i] + b[i] + c[i]).abs()).fold(0.0, f64::max)
    }
}

pub fn curvature_tensor(frame: &MetricFrame, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
    CurvatureModel::new(frame.clone()).tensor(x, y, z)
}

pub fn sectional(frame: &MetricFrame, u: &[f64], v: &[f64]) -> Result<f64> {
    CurvatureModel::new(frame.clone()).sectional(u, v)
}
