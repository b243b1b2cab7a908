use num_complex::Complex64;

use super::generator::SparseGenerator;
use super::state::{MixedState, PureState};
use crate::error::{Error, Result};

/// Default bound on `D_L · D_R` for two-mode evolution.
pub const DEFAULT_DIMENSION_LIMIT: usize = 6400;

/// Two-mode pure state; amplitude of `|l⟩_L |r⟩_R` at index `l · D_R + r`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    dims: (usize, usize),
    amps: Vec<Complex64>,
}

impl TwoModeState {
    /// `|left⟩ ⊗ |right⟩`.
    pub fn product(left: &PureState, right: &PureState) -> Self {
        let (dl, dr) = (left.dim(), right.dim());
        let mut amps = Vec::with_capacity(dl * dr);
        for a in left.amplitudes() {
            for b in right.amplitudes() {
                amps.push(a * b);
            }
        }
        TwoModeState { dims: (dl, dr), amps }
    }

    pub fn from_amplitudes(dims: (usize, usize), amps: Vec<Complex64>) -> Result<Self> {
        if dims.0 < 2 || dims.1 < 2 || amps.len() != dims.0 * dims.1 {
            return Err(Error::InvalidParameter(format!("two-mode amplitudes of length {} for {dims:?}", amps.len())));
        }
        Ok(TwoModeState { dims, amps })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn amplitude(&self, l: usize, r: usize) -> Complex64 {
        self.amps[l * self.dims.1 + r]
    }

    /// `Tr_R |ψ⟩⟨ψ|`.
    pub fn reduced_left(&self) -> MixedState {
        let (dl, dr) = self.dims;
        let mut rho = vec![Complex64::new(0.0, 0.0); dl * dl];
        for m in 0..dl {
            for n in 0..dl {
                rho[m * dl + n] = (0..dr).map(|j| self.amplitude(m, j) * self.amplitude(n, j).conj()).sum();
            }
        }
        MixedState::from_parts_unchecked(dl, rho, true)
    }

    /// `Tr_L |ψ⟩⟨ψ|`.
    pub fn reduced_right(&self) -> MixedState {
        let (dl, dr) = self.dims;
        let mut rho = vec![Complex64::new(0.0, 0.0); dr * dr];
        for m in 0..dr {
            for n in 0..dr {
                rho[m * dr + n] = (0..dl).map(|j| self.amplitude(j, m) * self.amplitude(j, n).conj()).sum();
            }
        }
        MixedState::from_parts_unchecked(dr, rho, true)
    }
}

/// Hermitian quadratic two-mode generator, in angular-rate units:
///
/// `H/ħ = ω_L N_L + ω_R N_R + (g a_L† a_R + h.c.) + (s a_L† a_R† + h.c.)
///      + (ζ_L a_L†² + h.c.) + (ζ_R a_R†² + h.c.) + (d_L a_L† + h.c.) + (d_R a_R† + h.c.)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadraticGenerator {
    pub omega_l: f64,
    pub omega_r: f64,
    pub beam_splitter: Complex64,
    pub two_mode_squeeze: Complex64,
    pub squeeze_l: Complex64,
    pub squeeze_r: Complex64,
    pub drive_l: Complex64,
    pub drive_r: Complex64,
}

/// Beam-splitter generator `a_L† a_R + a_R† a_L`; evolving for time `θ` maps
/// `a_L → cos θ a_L − i sin θ a_R` (θ = π/4 is a 50:50 splitter).
pub fn beam_splitter() -> QuadraticGenerator {
    QuadraticGenerator { beam_splitter: Complex64::new(1.0, 0.0), ..Default::default() }
}

impl QuadraticGenerator {
    fn sparse(&self, dl: usize, dr: usize) -> SparseGenerator {
        let mut h = SparseGenerator::new(dl * dr);
        let idx = |l: usize, r: usize| l * dr + r;
        let sq = |n: usize| (n as f64).sqrt();
        for l in 0..dl {
            for r in 0..dr {
                let i = idx(l, r);
                h.add(i, i, Complex64::new(self.omega_l * l as f64 + self.omega_r * r as f64, 0.0));
                // a_L† a_R: |l, r⟩ → √(l+1)√r |l+1, r−1⟩
                if l + 1 < dl && r > 0 {
                    h.add_hermitian(idx(l + 1, r - 1), i, self.beam_splitter * sq(l + 1) * sq(r));
                }
                // a_L† a_R†
                if l + 1 < dl && r + 1 < dr {
                    h.add_hermitian(idx(l + 1, r + 1), i, self.two_mode_squeeze * sq(l + 1) * sq(r + 1));
                }
                if l + 2 < dl {
                    h.add_hermitian(idx(l + 2, r), i, self.squeeze_l * sq((l + 1) * (l + 2)));
                }
                if r + 2 < dr {
                    h.add_hermitian(idx(l, r + 2), i, self.squeeze_r * sq((r + 1) * (r + 2)));
                }
                if l + 1 < dl {
                    h.add_hermitian(idx(l + 1, r), i, self.drive_l * sq(l + 1));
                }
                if r + 1 < dr {
                    h.add_hermitian(idx(l, r + 1), i, self.drive_r * sq(r + 1));
                }
            }
        }
        h
    }
}

/// `exp(−i t H) |ψ⟩` on the truncated product space.
pub fn two_mode_evolve(
    state: &TwoModeState,
    generator: &QuadraticGenerator,
    t: f64,
    limit: usize,
) -> Result<TwoModeState> {
    let (dl, dr) = state.dims;
    if dl * dr > limit {
        return Err(Error::DimensionLimit { dim: dl * dr, limit });
    }
    let h = generator.sparse(dl, dr);
    Ok(TwoModeState { dims: state.dims, amps: h.evolve(&state.amps, t) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, vacuum};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn identity_at_zero_time() {
        let s = TwoModeState::product(&coherent_state(Complex64::new(1.0, 0.0), 20).unwrap(), &vacuum(20).unwrap());
        let e = two_mode_evolve(&s, &beam_splitter(), 0.0, DEFAULT_DIMENSION_LIMIT).unwrap();
        assert_eq!(e, s);
    }

    #[test]
    fn coherent_through_beam_splitter() {
        let a = Complex64::new(1.5, 0.5);
        let s = TwoModeState::product(&coherent_state(a, 30).unwrap(), &vacuum(30).unwrap());
        let e = two_mode_evolve(&s, &beam_splitter(), FRAC_PI_4, DEFAULT_DIMENSION_LIMIT).unwrap();
        assert!((e.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
        let k = std::f64::consts::FRAC_1_SQRT_2;
        let expect = TwoModeState::product(
            &coherent_state(a * k, 30).unwrap(),
            &coherent_state(a * Complex64::new(0.0, -k), 30).unwrap(),
        );
        let overlap: Complex64 = e.amplitudes().iter().zip(expect.amplitudes()).map(|(x, y)| x.conj() * y).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-9);
        assert!((e.reduced_left().purity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_limit() {
        let s = TwoModeState::product(&vacuum(100).unwrap(), &vacuum(100).unwrap());
        assert!(matches!(
            two_mode_evolve(&s, &beam_splitter(), 1.0, 5000),
            Err(Error::DimensionLimit { dim: 10000, limit: 5000 })
        ));
    }
}
