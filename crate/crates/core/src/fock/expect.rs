use num_complex::Complex64;

use super::state::{MixedState, PureState, QuadratureAngle};
use crate::error::{Error, Result};

/// Common read access to pure and mixed truncated states.
pub trait FockState {
    fn dim(&self) -> usize;

    /// `Tr ρ` (the squared norm for a pure state).
    fn trace(&self) -> f64;

    /// Unnormalised `Tr(ρ a†ᵐ aⁿ)`.
    fn normal_ordered(&self, m: usize, n: usize) -> Result<Complex64>;

    /// `⟨x|ρ|x⟩` in the rotated basis, given `u_k(x)` and `e^{-ikφ}`.
    fn density_at(&self, u: &[f64], phases: &[Complex64]) -> f64;

    /// `ρ_mn`.
    fn element(&self, m: usize, n: usize) -> Complex64;
}

/// `√((k+m)!/k!)`.
fn rising_sqrt(k: usize, m: usize) -> f64 {
    (1..=m).map(|j| ((k + j) as f64).sqrt()).product()
}

fn check(dim: usize, m: usize, n: usize) -> Result<()> {
    if m >= dim || n >= dim {
        return Err(Error::IndexOverflow { m, n, dim });
    }
    Ok(())
}

impl FockState for PureState {
    fn dim(&self) -> usize {
        PureState::dim(self)
    }

    fn trace(&self) -> f64 {
        self.norm_sqr()
    }

    fn normal_ordered(&self, m: usize, n: usize) -> Result<Complex64> {
        let d = PureState::dim(self);
        check(d, m, n)?;
        let c = self.amplitudes();
        let top = d - m.max(n);
        Ok((0..top).map(|k| c[k + m].conj() * c[k + n] * (rising_sqrt(k, m) * rising_sqrt(k, n))).sum())
    }

    fn density_at(&self, u: &[f64], phases: &[Complex64]) -> f64 {
        let amp: Complex64 = self.amplitudes().iter().zip(u).zip(phases).map(|((c, u), p)| c * p * *u).sum();
        amp.norm_sqr()
    }

    fn element(&self, m: usize, n: usize) -> Complex64 {
        self.amplitudes()[m] * self.amplitudes()[n].conj()
    }
}

impl FockState for MixedState {
    fn dim(&self) -> usize {
        MixedState::dim(self)
    }

    fn trace(&self) -> f64 {
        MixedState::trace(self)
    }

    fn normal_ordered(&self, m: usize, n: usize) -> Result<Complex64> {
        let d = MixedState::dim(self);
        check(d, m, n)?;
        let top = d - m.max(n);
        Ok((0..top).map(|k| self.get(k + n, k + m) * (rising_sqrt(k, m) * rising_sqrt(k, n))).sum())
    }

    fn density_at(&self, u: &[f64], phases: &[Complex64]) -> f64 {
        let d = MixedState::dim(self);
        let v: Vec<Complex64> = (0..d).map(|k| phases[k] * u[k]).collect();
        let mut s = Complex64::new(0.0, 0.0);
        for m in 0..d {
            let mut row = Complex64::new(0.0, 0.0);
            for n in 0..d {
                row += self.get(m, n) * v[n].conj();
            }
            s += v[m] * row;
        }
        s.re
    }

    fn element(&self, m: usize, n: usize) -> Complex64 {
        self.get(m, n)
    }
}

/// `⟨a†ᵐ aⁿ⟩`, unnormalised (`Tr(ρ a†ᵐ aⁿ)`), by index-shifted summation.
pub fn normal_ordered_expect<S: FockState + ?Sized>(state: &S, m: usize, n: usize) -> Result<Complex64> {
    state.normal_ordered(m, n)
}

/// Moments `μ_1 … μ_max` of `q(φ) = a e^{−iφ} + a† e^{iφ}`, divided by the trace.
///
/// Uses the normal-ordering expansion
/// `q(φ)ⁿ = Σ_{p+q+2l=n} n!/(p! q! l! 2ˡ) e^{i(p−q)φ} a†ᵖ a^q`.
pub fn quadrature_moments<S: FockState + ?Sized>(
    state: &S,
    phi: QuadratureAngle,
    max_order: usize,
) -> Result<Vec<f64>> {
    let tr = state.trace();
    let d = state.dim();
    let mut table = vec![vec![Complex64::new(0.0, 0.0); max_order + 1]; max_order + 1];
    for p in 0..=max_order {
        for q in 0..=(max_order - p) {
            if p < d && q < d {
                table[p][q] = if p <= q {
                    state.normal_ordered(p, q)?
                } else {
                    table[q][p].conj()
                };
            } else {
                return Err(Error::IndexOverflow { m: p, n: q, dim: d });
            }
        }
    }
    Ok(moments_from_table(&table, phi.radians(), max_order).into_iter().map(|m| m / tr).collect())
}

pub(crate) fn moments_from_table(table: &[Vec<Complex64>], phi: f64, max_order: usize) -> Vec<f64> {
    let fact: Vec<f64> = (0..=max_order).scan(1.0, |f, k| {
        if k > 0 {
            *f *= k as f64;
        }
        Some(*f)
    }).collect();
    (1..=max_order)
        .map(|n| {
            let mut s = Complex64::new(0.0, 0.0);
            for l in 0..=n / 2 {
                for p in 0..=(n - 2 * l) {
                    let q = n - 2 * l - p;
                    let w = fact[n] / (fact[p] * fact[q] * fact[l] * 2f64.powi(l as i32));
                    s += table[p][q] * Complex64::from_polar(w, (p as f64 - q as f64) * phi);
                }
            }
            s.re
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, fock_state, squeezed_coherent_state, vacuum, SqueezeParams};

    #[test]
    fn vacuum_moments() {
        let v = vacuum(12).unwrap();
        let mu = quadrature_moments(&v, QuadratureAngle::new(0.3), 8).unwrap();
        let expect = [0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0];
        for (a, b) in mu.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        for m in 0..4 {
            for n in 0..4 {
                if (m, n) != (0, 0) {
                    assert_eq!(normal_ordered_expect(&v, m, n).unwrap(), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn index_overflow() {
        let v = vacuum(4).unwrap();
        assert!(matches!(normal_ordered_expect(&v, 4, 0), Err(Error::IndexOverflow { .. })));
    }

    #[test]
    fn coherent_moments() {
        let a = Complex64::new(1.3, -0.4);
        let s = coherent_state(a, 60).unwrap();
        let e = normal_ordered_expect(&s, 1, 1).unwrap();
        assert!((e.re - a.norm_sqr()).abs() < 1e-12);
        let e = normal_ordered_expect(&s, 2, 3).unwrap();
        assert!((e - a.conj().powi(2) * a.powi(3)).norm() < 1e-11);
        let mu = quadrature_moments(&s, QuadratureAngle::new(0.0), 1).unwrap();
        assert!((mu[0] - 2.6).abs() < 1e-12);
    }

    #[test]
    fn squeezed_second_moments() {
        let xi = SqueezeParams::new(0.5, 0.7).unwrap();
        let s = squeezed_coherent_state(Complex64::new(0.0, 0.0), xi, 80).unwrap();
        let a2 = normal_ordered_expect(&s, 0, 2).unwrap();
        let expect = -Complex64::from_polar(1.0, 0.7) * 0.5f64.sinh() * 0.5f64.cosh();
        assert!((a2 - expect).norm() < 1e-9);
        let s = squeezed_coherent_state(Complex64::new(0.0, 0.0), SqueezeParams::new(0.3, 0.0).unwrap(), 60).unwrap();
        let mu = quadrature_moments(&s, QuadratureAngle::new(0.0), 2).unwrap();
        assert!((mu[1] - (0.6f64.cosh() - 0.6f64.sinh())).abs() < 1e-9);
    }

    #[test]
    fn mixed_matches_pure() {
        let s = squeezed_coherent_state(Complex64::new(0.4, 0.9), SqueezeParams::new(0.3, 1.1).unwrap(), 50).unwrap();
        let m = s.to_mixed();
        for (p, q) in [(0, 1), (2, 1), (3, 4), (0, 4)] {
            let a = normal_ordered_expect(&s, p, q).unwrap();
            let b = normal_ordered_expect(&m, p, q).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
        let f = fock_state(3, 8).unwrap().to_mixed();
        assert!((normal_ordered_expect(&f, 1, 1).unwrap().re - 3.0).abs() < 1e-14);
    }
}
