//! Moments to cumulants, k-statistics, `Var(k₄)` and signal-to-noise ratios.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{quadrature_moments, FockState, QuadratureAngle, SampleSet};

/// Whether cumulants come from exact moments or from samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CumulantSource {
    Exact,
    Estimated,
}

/// Cumulants `κ_1 … κ_n`; `kappa[0]` is `κ_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantSet {
    pub kappa: Vec<f64>,
    pub source: CumulantSource,
    pub phi: Option<QuadratureAngle>,
}

impl CumulantSet {
    /// `κ_n` (1-based); zero beyond the stored order.
    pub fn get(&self, n: usize) -> f64 {
        self.kappa.get(n - 1).copied().unwrap_or(0.0)
    }
}

/// `κ_n = μ_n − Σ_{m=1}^{n−1} C(n−1, m−1) μ_{n−m} κ_m` with `μ_0 = 1`.
pub fn cumulants_from_moments(mu: &[f64]) -> CumulantSet {
    let mut kappa: Vec<f64> = Vec::with_capacity(mu.len());
    for n in 1..=mu.len() {
        let mut k = mu[n - 1];
        let mut binom = 1.0;
        for m in 1..n {
            let rest = if n - m == 0 { 1.0 } else { mu[n - m - 1] };
            k -= binom * rest * kappa[m - 1];
            binom = binom * (n - 1 - (m - 1)) as f64 / m as f64;
        }
        kappa.push(k);
    }
    CumulantSet { kappa, source: CumulantSource::Exact, phi: None }
}

/// `κ₄ = μ₄ − 4μ₁μ₃ − 3μ₂² + 12μ₂μ₁² − 6μ₁⁴`.
pub fn kappa4_explicit(mu: &[f64]) -> f64 {
    let (m1, m2, m3, m4) = (mu[0], mu[1], mu[2], mu[3]);
    m4 - 4.0 * m1 * m3 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1.powi(4)
}

/// Exact cumulants of `q(φ)` for a truncated state.
pub fn quadrature_cumulants<S: FockState + ?Sized>(
    state: &S,
    phi: QuadratureAngle,
    max_order: usize,
) -> Result<CumulantSet> {
    let mu = quadrature_moments(state, phi, max_order)?;
    let mut c = cumulants_from_moments(&mu);
    c.phi = Some(phi);
    Ok(c)
}

/// Unbiased estimators of `κ₂, κ₃, κ₄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KStatistics {
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub sample_count: usize,
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(mut self, o: Compensated) -> Compensated {
        self.add(o.sum);
        self.add(o.c);
        self
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

const REDUCE_CHUNK: usize = 4096;

/// Power sums `S_1 … S_P` of `x − shift`, compensated within fixed chunks and
/// combined by a pairwise tree in chunk order, so the result does not depend on
/// the thread count.
fn power_sums<const P: usize>(values: &[f64], shift: f64) -> [f64; P] {
    let parts: Vec<[Compensated; P]> = values
        .par_chunks(REDUCE_CHUNK)
        .map(|chunk| {
            let mut acc = [Compensated::default(); P];
            for &x in chunk {
                let d = x - shift;
                let mut p = 1.0;
                for a in acc.iter_mut() {
                    p *= d;
                    a.add(p);
                }
            }
            acc
        })
        .collect();
    let total = tree_reduce(&parts);
    let mut out = [0.0; P];
    for (o, t) in out.iter_mut().zip(total.iter()) {
        *o = t.value();
    }
    out
}

fn tree_reduce<const P: usize>(parts: &[[Compensated; P]]) -> [Compensated; P] {
    match parts.len() {
        0 => [Compensated::default(); P],
        1 => parts[0],
        n => {
            let (a, b) = parts.split_at(n / 2);
            let (a, b) = (tree_reduce(a), tree_reduce(b));
            let mut out = a;
            for (o, x) in out.iter_mut().zip(b.iter()) {
                *o = o.merge(*x);
            }
            out
        }
    }
}

/// k-statistics of a sample record.
pub fn k_statistics(samples: &SampleSet) -> Result<KStatistics> {
    k_statistics_of(&samples.values)
}

/// k-statistics of raw values.
///
/// Data are shifted by their compensated mean before forming power sums;
/// `k₂, k₃, k₄` are shift invariant, and the shift keeps high powers well conditioned.
pub fn k_statistics_of(values: &[f64]) -> Result<KStatistics> {
    let count = values.len();
    if count < 4 {
        return Err(Error::TooFewSamples { count });
    }
    let n = count as f64;
    let [s1] = power_sums::<1>(values, 0.0);
    let mean = s1 / n;
    let [s1, s2, s3, s4] = power_sums::<4>(values, mean);
    let k2 = (n * s2 - s1 * s1) / (n * (n - 1.0));
    let k3 = (2.0 * s1.powi(3) - 3.0 * n * s1 * s2 + n * n * s3) / (n * (n - 1.0) * (n - 2.0));
    let k4 = (-6.0 * s1.powi(4) + 12.0 * n * s1 * s1 * s2 - 3.0 * n * (n - 1.0) * s2 * s2
        - 4.0 * n * (n + 1.0) * s1 * s3
        + n * n * (n + 1.0) * s4)
        / (n * (n - 1.0) * (n - 2.0) * (n - 3.0));
    Ok(KStatistics { k2, k3, k4, sample_count: count })
}

/// Exact `Var(k₄)` for `m` samples from a distribution with the given cumulants.
pub fn var_k4(kappa: &CumulantSet, m: u64) -> Result<f64> {
    if m < 4 {
        return Err(Error::TooFewSamples { count: m as usize });
    }
    let k = |n| kappa.get(n);
    let m = m as f64;
    Ok(k(8) / m
        + 16.0 * k(2) * k(6) / (m - 1.0)
        + 48.0 * k(3) * k(5) / (m - 1.0)
        + 34.0 * k(4).powi(2) / (m - 1.0)
        + 72.0 * m * k(2).powi(2) * k(4) / ((m - 1.0) * (m - 2.0))
        + 144.0 * m * k(2) * k(3).powi(2) / ((m - 1.0) * (m - 2.0))
        + 24.0 * m * (m + 1.0) * k(2).powi(4) / ((m - 1.0) * (m - 2.0) * (m - 3.0)))
}

/// Large-`m` form `(κ₈ + 16κ₂κ₆ + 48κ₃κ₅ + 34κ₄² + 72κ₂²κ₄ + 144κ₂κ₃² + 24κ₂⁴)/m`.
pub fn var_k4_asymptotic(kappa: &CumulantSet, m: u64) -> f64 {
    let k = |n| kappa.get(n);
    (k(8) + 16.0 * k(2) * k(6) + 48.0 * k(3) * k(5) + 34.0 * k(4).powi(2) + 72.0 * k(2).powi(2) * k(4)
        + 144.0 * k(2) * k(3).powi(2)
        + 24.0 * k(2).powi(4))
        / m as f64
}

/// `|κ₄| / √Var(k₄)`, zero when `κ₄ = 0`.
pub fn snr(kappa4: f64, var_k4: f64) -> f64 {
    if kappa4 == 0.0 {
        0.0
    } else {
        kappa4.abs() / var_k4.sqrt()
    }
}

/// First-order SNR for a squeezed vacuum probed at `ν = 2φ − ϑ`:
/// `√(6m) χt sinh²2r |sin ν (sinh 2r − cos ν cosh 2r)| / (cosh 2r − cos ν sinh 2r)²`.
pub fn snr_squeezed_vacuum_first_order(r: f64, nu: f64, chi_t: f64, m: u64) -> f64 {
    let s = (2.0 * r).sinh();
    let (eta, den) = squeezed_brackets(r, nu);
    (6.0 * m as f64).sqrt() * chi_t * s * s * (nu.sin() * eta).abs() / (den * den)
}

/// `(sinh 2r − cos ν cosh 2r, cosh 2r − cos ν sinh 2r)` without cancellation at large `r`.
pub(crate) fn squeezed_brackets(r: f64, nu: f64) -> (f64, f64) {
    let (s, c) = ((2.0 * r).sinh(), (2.0 * r).cosh());
    let e = (-2.0 * r).exp();
    let h = 2.0 * (0.5 * nu).sin().powi(2);
    (-e + c * h, e + s * h)
}

/// Reverse-protocol SNR `√(3/2) χτ |sin 2ν| sinh²2r`, as printed and with the `√m` factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReverseSnr {
    /// Without a repetition factor.
    pub single: f64,
    /// `single · √m`.
    pub repeated: f64,
}

pub fn snr_reverse_protocol(r: f64, nu: f64, chi_tau: f64, m: u64) -> ReverseSnr {
    let single = 1.5f64.sqrt() * chi_tau * (2.0 * nu).sin().abs() * (2.0 * r).sinh().powi(2);
    ReverseSnr { single, repeated: single * (m as f64).sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moments_give_two_cumulants() {
        let c = cumulants_from_moments(&[0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0]);
        assert_eq!(c.kappa, vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        // shifted Gaussian: mean 0.7, variance 2
        let (a, v): (f64, f64) = (0.7, 2.0);
        let mu = [
            a,
            a * a + v,
            a.powi(3) + 3.0 * a * v,
            a.powi(4) + 6.0 * a * a * v + 3.0 * v * v,
        ];
        let c = cumulants_from_moments(&mu);
        assert!((c.kappa[0] - a).abs() < 1e-15 && (c.kappa[1] - v).abs() < 1e-14);
        assert!(c.kappa[2].abs() < 1e-14 && c.kappa[3].abs() < 1e-13);
    }

    #[test]
    fn poisson_cumulants() {
        // raw moments of Poisson(2) by direct summation
        let lam: f64 = 2.0;
        let mut mu = [0.0; 8];
        let mut p = (-lam).exp();
        for k in 0..200 {
            if k > 0 {
                p *= lam / k as f64;
            }
            for (n, m) in mu.iter_mut().enumerate() {
                *m += p * (k as f64).powi(n as i32 + 1);
            }
        }
        let c = cumulants_from_moments(&mu);
        for k in c.kappa {
            assert!((k - 2.0).abs() < 1e-9, "{k}");
        }
    }

    #[test]
    fn explicit_kappa4_matches_recursion() {
        let mu = [0.3, 1.7, 0.9, 8.1];
        assert!((cumulants_from_moments(&mu).kappa[3] - kappa4_explicit(&mu)).abs() < 1e-13);
    }

    #[test]
    fn constant_samples() {
        let k = k_statistics_of(&[3.5; 10]).unwrap();
        assert_eq!((k.k2, k.k3, k.k4), (0.0, 0.0, 0.0));
        assert!(matches!(k_statistics_of(&[1.0, 2.0, 3.0]), Err(Error::TooFewSamples { count: 3 })));
    }

    #[test]
    fn k_statistics_small_sample_oracle() {
        // brute-force: k-statistics equal the symmetric unbiased forms in central sums
        let x = [1.0, -2.0, 0.5, 4.0, 3.0, -1.5];
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let m2 = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let m3 = x.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
        let m4 = x.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
        let k2 = n * m2 / (n - 1.0);
        let k3 = n * n * m3 / ((n - 1.0) * (n - 2.0));
        let k4 = n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) / ((n - 1.0) * (n - 2.0) * (n - 3.0));
        let k = k_statistics_of(&x).unwrap();
        assert!((k.k2 - k2).abs() < 1e-12 && (k.k3 - k3).abs() < 1e-12 && (k.k4 - k4).abs() < 1e-12);
    }

    #[test]
    fn var_k4_gaussian() {
        let c = CumulantSet { kappa: vec![0.0, 1.0], source: CumulantSource::Exact, phi: None };
        let m = 10_000.0;
        let v = var_k4(&c, 10_000).unwrap();
        assert!((v - 24.0 * m * (m + 1.0) / ((m - 1.0) * (m - 2.0) * (m - 3.0))).abs() < 1e-18);
        assert!((v - 2.4016807442760937e-3).abs() < 1e-15);
        assert!(var_k4(&c, 3).is_err());
    }

    #[test]
    fn snr_basics() {
        assert_eq!(snr(0.0, 1.0), 0.0);
        assert_eq!(snr(1.0, 4.0), 0.5);
        assert_eq!(snr(-1.0, 4.0), 0.5);
        let r = snr_reverse_protocol(0.5, std::f64::consts::FRAC_PI_4, 1e-3, 100);
        assert!((r.single - 1.5f64.sqrt() * 1e-3 * 1f64.sinh().powi(2)).abs() < 1e-15);
        assert!((r.repeated - 10.0 * r.single).abs() < 1e-15);
        assert_eq!(snr_reverse_protocol(0.5, 0.0, 1e-3, 100).single, 0.0);
    }
}
