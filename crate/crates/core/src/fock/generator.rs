use num_complex::Complex64;

use super::state::{PureState, SqueezeParams};
use crate::error::Result;

/// Sparse Hermitian generator `H` on a truncated basis; [`SparseGenerator::evolve`]
/// applies `exp(−i t H)` to a vector.
#[derive(Clone, Debug)]
pub struct SparseGenerator {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseGenerator {
    pub fn new(dim: usize) -> Self {
        SparseGenerator { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `v |row⟩⟨col|` (callers add the Hermitian conjugate themselves).
    pub fn add(&mut self, row: usize, col: usize, v: Complex64) {
        if v == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.rows[row].iter_mut().find(|(c, _)| *c == col) {
            Some(e) => e.1 += v,
            None => self.rows[row].push((col, v)),
        }
    }

    /// Adds `v |row⟩⟨col| + v* |col⟩⟨row|` (only once when `row == col`).
    pub fn add_hermitian(&mut self, row: usize, col: usize, v: Complex64) {
        if row == col {
            self.add(row, row, Complex64::new(v.re, 0.0));
        } else {
            self.add(row, col, v);
            self.add(col, row, v.conj());
        }
    }

    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|(c, h)| h * v[*c]).sum();
        }
    }

    /// Maximum absolute row sum, an upper bound on the operator norm.
    pub fn norm_bound(&self) -> f64 {
        self.rows.iter().map(|r| r.iter().map(|(_, h)| h.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// `exp(−i t H) v` by a Taylor series on sub-steps with `‖tH‖/steps ≤ 1/2`.
    pub fn evolve(&self, v: &[Complex64], t: f64) -> Vec<Complex64> {
        let total = self.norm_bound() * t.abs();
        let steps = ((2.0 * total).ceil() as usize).max(1);
        let dt = t / steps as f64;
        let mut x = v.to_vec();
        let mut term = vec![Complex64::new(0.0, 0.0); self.dim];
        let mut tmp = vec![Complex64::new(0.0, 0.0); self.dim];
        let scale = Complex64::new(0.0, -dt);
        for _ in 0..steps {
            term.copy_from_slice(&x);
            let base: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for k in 1..80 {
                self.apply(&term, &mut tmp);
                let f = scale / k as f64;
                let mut size = 0.0;
                for (t, y) in term.iter_mut().zip(&tmp) {
                    *t = y * f;
                    size += t.norm_sqr();
                }
                for (a, t) in x.iter_mut().zip(&term) {
                    *a += t;
                }
                if size.sqrt() <= 1e-18 * base {
                    break;
                }
            }
        }
        x
    }
}

/// Applies `S(ξ) = exp((ξ* a² − ξ a†²)/2)` to `state` embedded in `dim ≥ state.dim()` levels.
///
/// The result is exact up to the truncation of the generator at `dim`; pad
/// generously when the output is more squeezed than the input.
pub fn apply_squeeze(state: &PureState, xi: SqueezeParams, dim: usize) -> Result<PureState> {
    let padded = state.resized(dim.max(state.dim()))?;
    let d = padded.dim();
    // exp(−iH) with H = (i ξ* a² − i ξ a†²)/2
    let mut h = SparseGenerator::new(d);
    let x = xi.xi();
    for n in 0..d.saturating_sub(2) {
        let amp = ((n + 1) as f64 * (n + 2) as f64).sqrt();
        // ⟨n+2| a†² |n⟩ = amp
        h.add_hermitian(n + 2, n, Complex64::new(0.0, -0.5) * x * amp);
    }
    let out = h.evolve(padded.amplitudes(), 1.0);
    PureState::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{squeezed_coherent_state, vacuum};

    #[test]
    fn squeeze_matches_recurrence() {
        let xi = SqueezeParams::new(0.5, 0.9).unwrap();
        let v = vacuum(2).unwrap();
        let s = apply_squeeze(&v, xi, 120).unwrap();
        let r = squeezed_coherent_state(Complex64::new(0.0, 0.0), xi, 120).unwrap();
        for (a, b) in s.amplitudes().iter().zip(r.amplitudes()).take(60) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn squeeze_inverse() {
        let xi = SqueezeParams::new(0.4, 0.3).unwrap();
        let back = SqueezeParams::new(0.4, 0.3 + std::f64::consts::PI).unwrap();
        let v = squeezed_coherent_state(Complex64::new(0.6, 0.2), SqueezeParams::none(), 40).unwrap();
        let s = apply_squeeze(&apply_squeeze(&v, xi, 150).unwrap(), back, 150).unwrap();
        assert!((s.fidelity(&v.resized(150).unwrap()) - 1.0).abs() < 1e-12);
    }
}
