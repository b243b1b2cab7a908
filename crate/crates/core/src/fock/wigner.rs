use num_complex::Complex64;
use rayon::prelude::*;

use super::expect::FockState;

/// Phase-space convention of [`WignerGrid`].
pub const WIGNER_CONVENTION: &str = "x = 2 Re(beta), p = 2 Im(beta); vacuum W = exp(-(x^2+p^2)/2) / (2 pi)";

/// Wigner function sampled on a rectangular grid; `values[i][j] = W(x_i, p_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub convention: &'static str,
}

fn trapezoid(y: &[f64], x: &[f64]) -> f64 {
    (1..x.len()).map(|i| 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1])).sum()
}

impl WignerGrid {
    /// `∫ W(x, p) dp` on the grid, one value per `x`.
    pub fn marginal_x(&self) -> Vec<f64> {
        self.values.iter().map(|row| trapezoid(row, &self.p_axis)).collect()
    }

    /// `∫∫ W dx dp` by the trapezoid rule; approximates the trace.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.marginal_x(), &self.x_axis)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `⟨n|D(γ)|m⟩` for `n, m < dim`, row-major.
fn displacement_elements(gamma: Complex64, dim: usize) -> Vec<Complex64> {
    let mut d = vec![Complex64::new(0.0, 0.0); dim * dim];
    d[0] = Complex64::new((-0.5 * gamma.norm_sqr()).exp(), 0.0);
    for m in 1..dim {
        d[m] = -gamma.conj() * d[m - 1] / (m as f64).sqrt();
    }
    for n in 0..dim - 1 {
        let k = 1.0 / ((n + 1) as f64).sqrt();
        for m in 0..dim {
            let lower = if m > 0 { d[n * dim + m - 1] * (m as f64).sqrt() } else { Complex64::new(0.0, 0.0) };
            d[(n + 1) * dim + m] = (lower + gamma * d[n * dim + m]) * k;
        }
    }
    d
}

/// Wigner function by displaced parity,
/// `W(β) = (2/π) Tr[ρ D(β) Π D†(β)] = (2/π) Σ_mn ρ_mn (−1)ᵐ ⟨n|D(2β)|m⟩`,
/// expressed as a density in `(x, p) = (2 Re β, 2 Im β)`.
pub fn wigner<S: FockState + Sync + ?Sized>(state: &S, x_grid: &[f64], p_grid: &[f64]) -> WignerGrid {
    let dim = state.dim();
    let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
    for m in 0..dim {
        for n in 0..dim {
            rho[m * dim + n] = state.element(m, n) * if m % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    let values = x_grid
        .par_iter()
        .map(|&x| {
            p_grid
                .iter()
                .map(|&p| {
                    // D(2β) with 2β = x + ip
                    let d = displacement_elements(Complex64::new(x, p), dim);
                    let mut s = Complex64::new(0.0, 0.0);
                    for m in 0..dim {
                        for n in 0..dim {
                            s += rho[m * dim + n] * d[n * dim + m];
                        }
                    }
                    s.re / (2.0 * std::f64::consts::PI)
                })
                .collect()
        })
        .collect();
    WignerGrid { x_axis: x_grid.to_vec(), p_axis: p_grid.to_vec(), values, convention: WIGNER_CONVENTION }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, fock_state, vacuum};
    use std::f64::consts::PI;

    #[test]
    fn displacement_is_unitary_on_low_block() {
        let g = Complex64::new(0.7, -0.3);
        let d = displacement_elements(g, 40);
        for a in 0..5 {
            for b in 0..5 {
                let s: Complex64 = (0..40).map(|n| d[n * 40 + a].conj() * d[n * 40 + b]).sum();
                let e = if a == b { 1.0 } else { 0.0 };
                assert!((s - e).norm() < 1e-12);
            }
        }
        // ⟨n|D(γ)|0⟩ is the coherent amplitude
        let c = coherent_state(g, 40).unwrap();
        for n in 0..10 {
            assert!((d[n * 40] - c.amplitudes()[n]).norm() < 1e-14);
        }
    }

    #[test]
    fn origin_values() {
        let w = wigner(&vacuum(6).unwrap(), &[0.0], &[0.0]);
        assert!((w.values[0][0] - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let w = wigner(&fock_state(1, 6).unwrap(), &[0.0], &[0.0]);
        assert!((w.values[0][0] + 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn coherent_peak_location() {
        let a = Complex64::new(0.8, -0.5);
        let c = coherent_state(a, 40).unwrap();
        let w = wigner(&c, &[1.6], &[-1.0, 0.0]);
        assert!((w.values[0][0] - 1.0 / (2.0 * PI)).abs() < 1e-12);
        assert!(w.values[0][1] < w.values[0][0]);
    }
}
