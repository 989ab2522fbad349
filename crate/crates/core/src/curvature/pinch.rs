use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::frame::MetricFrame;
use super::tensor::CurvatureModel;

const CHUNK: usize = 1024;
const BIANCHI_TRIPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub eps: f64,
    pub layout: String,
    pub samples: usize,
    pub seed: u64,
    pub min: f64,
    pub max: f64,
    /// `min / max`; at least 1, and 1 for constant curvature. Infinite (JSON `null`) when some sampled plane has `sec ≥ 0`.
    pub ratio: f64,
    pub bianchi_residual_max: f64,
}

#[derive(Clone, Debug)]
struct Extreme {
    value: f64,
    plane: Vec<f64>,
}

fn normal_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Plane parameters are `(u, v)` concatenated.
fn sec_of(model: &CurvatureModel, p: &[f64]) -> Option<f64> {
    let n = model.dim();
    model.sectional(&p[..n], &p[n..]).ok()
}

fn better(a: &Extreme, b: &Extreme, lower: bool) -> bool {
    if lower {
        a.value < b.value
    } else {
        a.value > b.value
    }
}

/// Coordinate-wise golden-section search around `start`.
fn refine(model: &CurvatureModel, start: Extreme, steps: usize, lower: bool) -> Extreme {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let sign = if lower { 1.0 } else { -1.0 };
    let mut best = start;
    for step in 0..steps {
        let h = 0.5f64.powi(step as i32 + 1);
        for i in 0..best.plane.len() {
            let f = |d: f64| {
                let mut p = best.plane.clone();
                p[i] += d;
                sec_of(model, &p).map_or(f64::INFINITY, |s| sign * s)
            };
            let (mut a, mut b) = (-h, h);
            let mut c = b - phi * (b - a);
            let mut d = a + phi * (b - a);
            let (mut fc, mut fd) = (f(c), f(d));
            for _ in 0..40 {
                if fc < fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - phi * (b - a);
                    fc = f(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + phi * (b - a);
                    fd = f(d);
                }
            }
            let delta = (a + b) / 2.0;
            let mut p = best.plane.clone();
            p[i] += delta;
            if let Some(s) = sec_of(model, &p) {
                let cand = Extreme { value: s, plane: p };
                if better(&cand, &best, lower) {
                    best = cand;
                }
            }
        }
    }
    best
}

/// Sampled extremes `(min, max)` with their planes.
fn sample_extremes(model: &CurvatureModel, samples: usize, seed: u64) -> (Extreme, Extreme) {
    let n = model.dim();
    let chunks = samples.div_ceil(CHUNK).max(1);
    let init = || (Extreme { value: f64::INFINITY, plane: Vec::new() }, Extreme { value: f64::NEG_INFINITY, plane: Vec::new() });
    let pick = |(lo, hi): (Extreme, Extreme), (lo2, hi2): (Extreme, Extreme)| {
        // Ties resolve to the lexicographically smaller plane so the reduction order is irrelevant.
        let choose = |a: Extreme, b: Extreme, lower: bool| {
            if better(&b, &a, lower) || (a.value == b.value && b.plane < a.plane) {
                b
            } else {
                a
            }
        };
        (choose(lo, lo2, true), choose(hi, hi2, false))
    };
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let count = CHUNK.min(samples.saturating_sub(c * CHUNK)).max(if samples == 0 { 0 } else { 1 });
            let mut acc = init();
            for _ in 0..count {
                let mut p = normal_vec(&mut rng, n);
                p.extend(normal_vec(&mut rng, n));
                if let Some(s) = sec_of(model, &p) {
                    let e = Extreme { value: s, plane: p };
                    acc = pick(acc, (e.clone(), e));
                }
            }
            acc
        })
        .reduce(init, pick)
}

/// Min and max sectional curvature over sampled planes, refined locally.
pub fn pinching_estimate(frame: &MetricFrame, samples: usize, refine_steps: usize, seed: u64) -> CurvatureReport {
    let model = CurvatureModel::new(frame.clone());
    let (lo, hi) = sample_extremes(&model, samples, seed);
    let (lo, hi) = if lo.plane.is_empty() { (lo, hi) } else { (refine(&model, lo, refine_steps, true), refine(&model, hi, refine_steps, false)) };
    let mut rng = chunk_rng(seed, u64::MAX);
    let n = model.dim();
    let bianchi = (0..BIANCHI_TRIPLES)
        .map(|_| {
            let [x, y, z] = [0; 3].map(|_| normal_vec(&mut rng, n));
            model.bianchi_residual(&x, &y, &z)
        })
        .fold(0.0, f64::max);
    CurvatureReport {
        eps: frame.eps,
        layout: frame.layout.to_string(),
        samples,
        seed,
        min: lo.value,
        max: hi.value,
        ratio: if hi.value < 0.0 { lo.value / hi.value } else { f64::INFINITY },
        bianchi_residual_max: bianchi,
    }
}

/// Comparison of `Tr[α]` with `(dim) · b`, `b² = min sec / max sec`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PansuReport {
    pub trace: f64,
    pub dim: usize,
    pub b_est: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub curvature: CurvatureReport,
}

pub const PANSU_TOLERANCE: f64 = 1e-6;

/// Rescales so the sampled maximum is −1 and checks the conformal-dimension inequality.
pub fn pansu_consistency(frame: &MetricFrame, samples: usize, refine_steps: usize, seed: u64) -> PansuReport {
    let curvature = pinching_estimate(frame, samples, refine_steps, seed);
    let trace: f64 = (0..frame.alpha.len()).map(|i| frame.alpha[i][i]).sum();
    let dim = frame.alpha.len();
    let b_est = curvature.ratio.sqrt();
    let bound = dim as f64 * b_est;
    PansuReport { trace, dim, b_est, bound, tolerance: PANSU_TOLERANCE, holds: trace <= bound * (1.0 + PANSU_TOLERANCE), curvature }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(layout: &str, eps: f64) -> MetricFrame {
        MetricFrame::new(layout.parse().unwrap(), eps).unwrap()
    }

    #[test]
    fn identity_is_exactly_pinched() {
        for eps in [1.0, 0.1, 0.01] {
            let r = pinching_estimate(&frame("J1,J1,J1", eps), 2000, 2, 7);
            assert!((r.ratio - 1.0).abs() < 1e-9);
            assert!((r.min + 1.0).abs() < 1e-9 && (r.max + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn jordan_three_improves() {
        let ratios: Vec<f64> = [1.0, 0.1, 0.01].iter().map(|&e| pinching_estimate(&frame("J3", e), 4000, 3, 11).ratio).collect();
        assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2] && ratios[2] >= 1.0, "{ratios:?}");
    }

    #[test]
    fn rotation_block() {
        let r = pinching_estimate(&frame("C1:1,J1,J1", 0.01), 4000, 3, 5);
        assert!(r.ratio < 1.1, "{r:?}");
        assert!(r.max < 0.0);
    }

    #[test]
    fn deterministic_given_seed() {
        let f = frame("J2,J1", 0.3);
        assert_eq!(pinching_estimate(&f, 5000, 1, 9), pinching_estimate(&f, 5000, 1, 9));
    }

    #[test]
    fn pansu() {
        let p = pansu_consistency(&frame("J1,J1,J1", 0.5), 1000, 1, 1);
        assert!(p.holds && (p.trace - 3.0).abs() < 1e-12);
        let p = pansu_consistency(&frame("J3", 0.01), 2000, 2, 1);
        assert!(p.holds && p.b_est >= 1.0);
        let p = pansu_consistency(&frame("J2", 1.0), 2000, 2, 1);
        assert!(p.holds && p.trace < p.bound);
    }
}
