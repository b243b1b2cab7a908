//! Exact Kerr-evolved normal-ordered moments of squeezed coherent states.
//!
//! In the Bargmann representation the squeezed coherent state is
//! `g(w) ∝ exp(−½τw² + bw)` with `τ = e^{iϑ} tanh r` and `b = α + τα*`.
//! Annihilators act as `aⁿ g = P_n g` with `P_{n+1} = P_n' + (b − τw) P_n`, and
//! `e^{iθN}` rescales `w → e^{iθ} w`. Each expectation
//! `⟨a†ᵐ e^{iθN} aⁿ⟩` is then a complex Gaussian integral whose normalisation,
//! means and covariances are closed form; polynomial moments follow by Wick
//! recursion. Arithmetic runs in MPFR at a caller-chosen precision because the
//! quadrature cumulants of macroscopic states are tiny differences of huge moments.

use num_complex::Complex64;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::fock::SqueezeParams;

/// Working precision in bits for moments up to `order` with mean photon number `photons`.
pub fn working_precision(photons: f64, order: usize) -> u32 {
    let bits = 128.0 + 1.5 * order as f64 * (1.0 + photons.max(0.0)).log2();
    bits.ceil().min(16384.0) as u32
}

pub(crate) struct Ctx {
    pub prec: u32,
}

impl Ctx {
    pub fn c(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.prec, (re, im))
    }

    pub fn f(&self, x: f64) -> Float {
        Float::with_val(self.prec, x)
    }

    pub fn cis(&self, x: &Float) -> Complex {
        Complex::with_val(self.prec, (x.clone().cos(), x.clone().sin()))
    }
}

fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

/// Table of `⟨a†ᵐ aⁿ(t)⟩` for all `m + n ≤ order` under `H = −½ħχ a†a†aa`.
pub struct KerrMomentTable {
    prec: u32,
    order: usize,
    values: Vec<Vec<Complex>>,
}

impl KerrMomentTable {
    /// Computes the table for `|α, ξ⟩ = D(α)S(ξ)|0⟩` at `χt = chi_t`.
    pub fn new(alpha: Complex64, xi: SqueezeParams, chi_t: f64, order: usize, prec: u32) -> Result<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() || !chi_t.is_finite() {
            return Err(Error::InvalidParameter("non-finite input to exact Kerr moments".into()));
        }
        if xi.r() > 350.0 {
            return Err(Error::DomainError(format!("squeezing r = {} exceeds 350", xi.r())));
        }
        if prec < 53 {
            return Err(Error::InvalidParameter(format!("precision {prec} below double")));
        }
        let cx = Ctx { prec };
        let zero = cx.c(0.0, 0.0);
        let one = cx.c(1.0, 0.0);
        let tau = cx.cis(&cx.f(xi.theta())) * cx.f(xi.r()).tanh();
        let a = cx.c(alpha.re, alpha.im);
        let b = Complex::with_val(prec, &a + &tau * a.clone().conj());
        let tau_c = tau.clone().conj();
        let b_c = b.clone().conj();

        let mut polys: Vec<Vec<Complex>> = vec![vec![one.clone()]];
        for n in 0..order {
            let p = &polys[n];
            let mut q = vec![zero.clone(); n + 2];
            for (j, pj) in p.iter().enumerate() {
                if j > 0 {
                    q[j - 1] += Complex::with_val(prec, pj * j as u32);
                }
                q[j] += Complex::with_val(prec, &b * pj);
                q[j + 1] -= Complex::with_val(prec, &tau * pj);
            }
            polys.push(q);
        }

        let mut values = vec![vec![zero.clone(); order + 1]; order + 1];
        let mut log_z0 = zero.clone();
        for k in 0..=order {
            let theta = cx.f(chi_t) * k as u32;
            let e1 = cx.cis(&theta);
            let e2 = Complex::with_val(prec, e1.square_ref());
            let big_a = -Complex::with_val(prec, &tau * &e2);
            let big_b = Complex::with_val(prec, -&tau_c);
            let j_ = Complex::with_val(prec, &b * &e1);
            let k_ = b_c.clone();
            let d = Complex::with_val(prec, &one - &big_a * &big_b);
            let quad = Complex::with_val(prec, &j_ * &k_)
                + Complex::with_val(prec, &big_a * k_.clone().square()) / 2u32
                + Complex::with_val(prec, &big_b * j_.clone().square()) / 2u32;
            let log_z = Complex::with_val(prec, quad / &d) - d.clone().ln() / 2u32;
            if k == 0 {
                log_z0 = log_z.clone();
            }
            let ratio = Complex::with_val(prec, &log_z - &log_z0).exp();
            let mw = Complex::with_val(prec, &k_ + &big_b * &j_) / &d;
            let mwb = Complex::with_val(prec, &j_ + &big_a * &k_) / &d;
            let cww = Complex::with_val(prec, &big_b / &d);
            let cbb = Complex::with_val(prec, &big_a / &d);
            let cwb = Complex::with_val(prec, &one / &d);

            // e[i][j] = E[w̄ⁱ wʲ]
            let mut e = vec![vec![zero.clone(); order + 1]; order + 1];
            e[0][0] = one.clone();
            for jj in 1..=order {
                let mut v = Complex::with_val(prec, &mw * &e[0][jj - 1]);
                if jj >= 2 {
                    v += Complex::with_val(prec, &cww * &e[0][jj - 2]) * (jj - 1) as u32;
                }
                e[0][jj] = v;
            }
            for i in 1..=order {
                for jj in 0..=(order - i) {
                    let mut v = Complex::with_val(prec, &mwb * &e[i - 1][jj]);
                    if i >= 2 {
                        v += Complex::with_val(prec, &cbb * &e[i - 2][jj]) * (i - 1) as u32;
                    }
                    if jj >= 1 {
                        v += Complex::with_val(prec, &cwb * &e[i - 1][jj - 1]) * jj as u32;
                    }
                    e[i][jj] = v;
                }
            }
            let mut rot = vec![one.clone()];
            for jj in 1..=order {
                let r = Complex::with_val(prec, &rot[jj - 1] * &e1);
                rot.push(r);
            }

            for m in 0..=order {
                let n = m + k;
                if m + n > order {
                    break;
                }
                let mut s = zero.clone();
                for (i, pm) in polys[m].iter().enumerate() {
                    let pmc = pm.clone().conj();
                    for (jj, pn) in polys[n].iter().enumerate() {
                        s += Complex::with_val(prec, &pmc * pn) * &rot[jj] * &e[i][jj];
                    }
                }
                let phase = cx.cis(&(cx.f(chi_t) * (k * (n + m).saturating_sub(1)) as u32 / 2u32));
                let v = s * &ratio * phase;
                values[n][m] = v.clone().conj();
                values[m][n] = v;
            }
        }
        Ok(KerrMomentTable { prec, order, values })
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `⟨a†ᵐ aⁿ(t)⟩` rounded to double precision.
    pub fn get(&self, m: usize, n: usize) -> Result<Complex64> {
        Ok(to_c64(self.get_exact(m, n)?))
    }

    pub fn get_exact(&self, m: usize, n: usize) -> Result<&Complex> {
        if m + n > self.order {
            return Err(Error::IndexOverflow { m, n, dim: self.order + 1 });
        }
        Ok(&self.values[m][n])
    }

    /// `μ_1 … μ_order` of `q(φ)` at working precision.
    pub fn quadrature_moments_exact(&self, phi: f64) -> Vec<Float> {
        let prec = self.prec;
        let cx = Ctx { prec };
        let e1 = cx.cis(&cx.f(phi));
        let mut pos = vec![cx.c(1.0, 0.0)];
        for s in 1..=self.order {
            let v = Complex::with_val(prec, &pos[s - 1] * &e1);
            pos.push(v);
        }
        let fact: Vec<f64> = (0..=self.order).scan(1.0, |f, k| {
            if k > 0 {
                *f *= k as f64;
            }
            Some(*f)
        }).collect();
        (1..=self.order)
            .map(|n| {
                let mut acc = cx.f(0.0);
                for l in 0..=n / 2 {
                    for p in 0..=(n - 2 * l) {
                        let q = n - 2 * l - p;
                        let w = fact[n] / (fact[p] * fact[q] * fact[l] * 2f64.powi(l as i32));
                        let rot = if p >= q { pos[p - q].clone() } else { pos[q - p].clone().conj() };
                        let term = Complex::with_val(prec, &self.values[p][q] * &rot);
                        acc += Float::with_val(prec, term.real() * w);
                    }
                }
                acc
            })
            .collect()
    }

    /// Cumulants `κ_1 … κ_order` of `q(φ)` at working precision.
    pub fn quadrature_cumulants_exact(&self, phi: f64) -> Vec<Float> {
        cumulants_exact(&self.quadrature_moments_exact(phi))
    }

    /// Cumulants rounded to double precision.
    pub fn quadrature_cumulants(&self, phi: f64) -> Vec<f64> {
        self.quadrature_cumulants_exact(phi).iter().map(|k| k.to_f64()).collect()
    }

    /// `(κ₄, Var(k₄), SNR)` for `m` repetitions; needs `order ≥ 8`.
    pub fn snr(&self, phi: f64, m: u64) -> Result<(f64, f64, f64)> {
        if self.order < 8 {
            return Err(Error::InvalidParameter("SNR needs moments up to order 8".into()));
        }
        if m < 4 {
            return Err(Error::TooFewSamples { count: m as usize });
        }
        let k = self.quadrature_cumulants_exact(phi);
        let var = var_k4_exact(&k, m, self.prec);
        let k4 = k[3].to_f64();
        let v = var.to_f64();
        Ok((k4, v, crate::cumulants::snr(k4, v)))
    }
}

/// Moment-to-cumulant recursion in MPFR.
pub(crate) fn cumulants_exact(mu: &[Float]) -> Vec<Float> {
    let mut kappa: Vec<Float> = Vec::with_capacity(mu.len());
    for n in 1..=mu.len() {
        let mut k = mu[n - 1].clone();
        let mut binom = 1u64;
        for m in 1..n {
            let t = Float::with_val(k.prec(), &mu[n - m - 1] * &kappa[m - 1]) * binom;
            k -= t;
            binom = binom * (n - m) as u64 / m as u64;
        }
        kappa.push(k);
    }
    kappa
}

/// Exact `Var(k₄)` in MPFR.
pub(crate) fn var_k4_exact(k: &[Float], m: u64, prec: u32) -> Float {
    let f = |x: f64| Float::with_val(prec, x);
    let mm = f(m as f64);
    let m1 = f(m as f64 - 1.0);
    let m2 = f(m as f64 - 2.0);
    let m3 = f(m as f64 - 3.0);
    let g = |n: usize| k.get(n - 1).cloned().unwrap_or_else(|| f(0.0));
    let (k2, k3, k4, k5, k6, k8) = (g(2), g(3), g(4), g(5), g(6), g(8));
    let k2sq = Float::with_val(prec, k2.square_ref());
    let mut v = Float::with_val(prec, &k8 / &mm);
    v += Float::with_val(prec, &k2 * &k6) * 16u32 / &m1;
    v += Float::with_val(prec, &k3 * &k5) * 48u32 / &m1;
    v += Float::with_val(prec, k4.square_ref()) * 34u32 / &m1;
    v += Float::with_val(prec, &k2sq * &k4) * 72u32 * &mm / Float::with_val(prec, &m1 * &m2);
    v += Float::with_val(prec, &k2 * Float::with_val(prec, k3.square_ref())) * 144u32 * &mm / Float::with_val(prec, &m1 * &m2);
    let denom = Float::with_val(prec, &m1 * &m2) * &m3;
    v += Float::with_val(prec, k2sq.square_ref()) * 24u32 * &mm * Float::with_val(prec, &mm + 1u32) / denom;
    v
}

/// Exact `⟨a†ᵐ aⁿ(t)⟩` for `|α, ξ⟩` under the attractive Kerr Hamiltonian at rate `chi`.
pub fn kerr_expect_squeezed_coherent(
    alpha: Complex64,
    xi: SqueezeParams,
    m: usize,
    n: usize,
    chi: f64,
    t: f64,
) -> Result<Complex64> {
    let prec = working_precision(alpha.norm_sqr() + xi.photons(), m + n).max(128);
    KerrMomentTable::new(alpha, xi, chi * t, m + n, prec)?.get(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{kerr_evolve, normal_ordered_expect, squeezed_coherent_state, KerrParams};

    #[test]
    fn time_zero_matches_fock() {
        let a = Complex64::new(0.8, -0.3);
        let xi = SqueezeParams::new(0.4, 0.7).unwrap();
        let s = squeezed_coherent_state(a, xi, 90).unwrap();
        let t = KerrMomentTable::new(a, xi, 0.0, 6, 128).unwrap();
        for m in 0..=3 {
            for n in 0..=(6 - m).min(3) {
                let f = normal_ordered_expect(&s, m, n).unwrap();
                assert!((t.get(m, n).unwrap() - f).norm() < 1e-10, "{m} {n}");
            }
        }
    }

    #[test]
    fn evolved_matches_fock() {
        let a = Complex64::new(1.1, 0.4);
        let xi = SqueezeParams::new(0.6, -0.5).unwrap();
        let chi_t = 0.37;
        let s = squeezed_coherent_state(a, xi, 120).unwrap();
        let e = kerr_evolve(&s, &KerrParams::new(1.0, 0.0).unwrap(), chi_t);
        let t = KerrMomentTable::new(a, xi, chi_t, 8, 160).unwrap();
        for m in 0..=4 {
            for n in 0..=(8 - m) {
                let f = normal_ordered_expect(&e, m, n).unwrap();
                let scale = 1.0 + f.norm();
                assert!((t.get(m, n).unwrap() - f).norm() < 1e-10 * scale, "{m} {n}");
            }
        }
    }

    #[test]
    fn cumulant_recursion_matches_f64() {
        let mu = [0.3, 1.7, 0.9, 8.1, 3.0, 60.0, 20.0, 900.0];
        let hp: Vec<Float> = mu.iter().map(|&x| Float::with_val(200, x)).collect();
        let a = cumulants_exact(&hp);
        let b = crate::cumulants::cumulants_from_moments(&mu);
        for (x, y) in a.iter().zip(&b.kappa) {
            assert!((x.to_f64() - y).abs() < 1e-10 * y.abs().max(1.0));
        }
        let c = crate::cumulants::CumulantSet { kappa: b.kappa.clone(), source: crate::cumulants::CumulantSource::Exact, phi: None };
        let v = var_k4_exact(&a, 50, 200).to_f64();
        let w = crate::cumulants::var_k4(&c, 50).unwrap();
        assert!((v - w).abs() < 1e-10 * w.abs());
    }
}
