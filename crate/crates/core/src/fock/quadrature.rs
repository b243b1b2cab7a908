use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::expect::{quadrature_moments, FockState};
use super::state::QuadratureAngle;
use crate::error::{Error, Result};
use crate::seed::{child_seed, rng};

/// Samples drawn per RNG stream; each chunk uses `child_seed(seed, chunk_index)`.
pub const SAMPLE_CHUNK: usize = 1 << 16;

/// Simulated homodyne record of one quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub phi: QuadratureAngle,
    pub values: Vec<f64>,
    pub seed: u64,
}

impl SampleSet {
    pub fn new(phi: QuadratureAngle, values: Vec<f64>, seed: u64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample".into()));
        }
        Ok(SampleSet { phi, values, seed })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Hermite functions `u_0(x) … u_{dim−1}(x)` normalised over `x` with unit vacuum variance:
/// `u_n(x) = (2π)^{−1/4} (2ⁿ n!)^{−1/2} H_n(x/√2) e^{−x²/4}`.
///
/// The upward recurrence runs on a rescaled sequence so large `n` and `|x|` neither
/// overflow nor underflow prematurely.
pub fn hermite_functions(x: f64, dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    if dim == 0 {
        return out;
    }
    let mut log_scale = -0.25 * x * x - 0.25 * (2.0 * std::f64::consts::PI).ln();
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    out[0] = log_scale.exp();
    for n in 0..dim.saturating_sub(1) {
        let next = (x * cur - (n as f64).sqrt() * prev) / ((n + 1) as f64).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            prev /= 1e150;
            cur /= 1e150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
        out[n + 1] = cur * log_scale.exp();
    }
    out
}

fn rotation_phases(dim: usize, phi: f64) -> Vec<Complex64> {
    (0..dim).map(|k| Complex64::from_polar(1.0, -(k as f64) * phi)).collect()
}

/// Probability density of `q(φ)` at each grid point, divided by the trace.
pub fn quadrature_pdf<S: FockState + Sync + ?Sized>(state: &S, phi: QuadratureAngle, x_grid: &[f64]) -> Vec<f64> {
    let d = state.dim();
    let phases = rotation_phases(d, phi.radians());
    let tr = state.trace();
    x_grid.par_iter().map(|&x| state.density_at(&hermite_functions(x, d), &phases) / tr).collect()
}

/// Tabulated inverse CDF with a piecewise-linear density.
struct InverseCdf {
    x: Vec<f64>,
    pdf: Vec<f64>,
    cdf: Vec<f64>,
}

impl InverseCdf {
    fn build<S: FockState + Sync + ?Sized>(state: &S, phi: QuadratureAngle) -> Result<Self> {
        let d = state.dim();
        let mu = quadrature_moments(state, phi, 2)?;
        let sigma = (mu[1] - mu[0] * mu[0]).max(1e-6).sqrt();
        // Hermite functions below dim vanish beyond |x| ≈ 2√dim
        let reach = 2.0 * (d as f64).sqrt() + 12.0;
        let h = sigma.min(1.0) / (16.0 * (d as f64).sqrt().max(1.0));
        let mut half = (12.0 * sigma).min(reach);
        let mut last_mass = 0.0;
        for _ in 0..12 {
            let (lo, hi) = (mu[0] - half, mu[0] + half);
            let n = (((hi - lo) / h).ceil() as usize).clamp(1024, 4_000_000);
            let x: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
            let pdf = quadrature_pdf(state, phi, &x);
            let dx = (hi - lo) / n as f64;
            let mut cdf = Vec::with_capacity(x.len());
            let mut acc = 0.0;
            cdf.push(0.0);
            for i in 1..x.len() {
                acc += 0.5 * (pdf[i] + pdf[i - 1]) * dx;
                cdf.push(acc);
            }
            last_mass = acc;
            if acc >= 1.0 - 1e-9 {
                return Ok(InverseCdf { x, pdf, cdf });
            }
            if half >= reach + 12.0 * sigma {
                break;
            }
            half *= 1.5;
        }
        Err(Error::GridUnderflow { mass: last_mass })
    }

    fn sample(&self, u: f64) -> f64 {
        let target = u * self.cdf[self.cdf.len() - 1];
        let i = match self.cdf.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
            Ok(i) => return self.x[i],
            Err(i) => i.clamp(1, self.cdf.len() - 1) - 1,
        };
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let dx = x1 - x0;
        let (f0, f1) = (self.pdf[i], self.pdf[i + 1]);
        let need = target - self.cdf[i];
        let slope = (f1 - f0) / dx;
        // solve f0 s + ½ slope s² = need for s in [0, dx]
        let s = if slope.abs() * dx < 1e-12 * f0.abs().max(1e-300) || f0 + f1 <= 0.0 {
            if f0 > 0.0 { need / f0 } else { 0.5 * dx }
        } else {
            let disc = (f0 * f0 + 2.0 * slope * need).max(0.0);
            2.0 * need / (f0 + disc.sqrt())
        };
        x0 + s.clamp(0.0, dx)
    }
}

/// Draws `count` i.i.d. outcomes of `q(φ)` by inverse-CDF sampling.
///
/// Chunks of [`SAMPLE_CHUNK`] samples run in parallel, each with its own
/// ChaCha20 stream seeded by `child_seed(seed, chunk)`; the output is identical
/// for any thread count.
pub fn sample_quadrature<S: FockState + Sync + ?Sized>(
    state: &S,
    phi: QuadratureAngle,
    count: usize,
    seed: u64,
) -> Result<SampleSet> {
    let table = InverseCdf::build(state, phi)?;
    let chunks = count.div_ceil(SAMPLE_CHUNK);
    let values: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut g = rng(child_seed(seed, c as u64));
            let len = SAMPLE_CHUNK.min(count - c * SAMPLE_CHUNK);
            let v: Vec<f64> = (0..len).map(|_| table.sample(g.gen::<f64>())).collect();
            v
        })
        .collect();
    SampleSet::new(phi, values, seed)
}
