use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::experiment::HBAR;

/// Default tail tolerance for coherent and cat states.
pub const COHERENT_TAIL_TOLERANCE: f64 = 1e-10;
/// Default tail tolerance for squeezed coherent states.
pub const SQUEEZED_TAIL_TOLERANCE: f64 = 1e-8;

/// Quadrature angle, reduced to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureAngle(f64);

impl QuadratureAngle {
    pub fn new(phi: f64) -> Self {
        let r = phi.rem_euclid(TAU);
        QuadratureAngle(if r >= TAU { 0.0 } else { r })
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for QuadratureAngle {
    fn from(phi: f64) -> Self {
        QuadratureAngle::new(phi)
    }
}

/// Squeezing parameter `ξ = r e^{iϑ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("squeezing r={r}, theta={theta}")));
        }
        Ok(SqueezeParams { r, theta })
    }

    pub fn none() -> Self {
        SqueezeParams { r: 0.0, theta: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn xi(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// Mean photon number `sinh² r` of the squeezed vacuum.
    pub fn photons(&self) -> f64 {
        self.r.sinh().powi(2)
    }
}

/// Sign of the Kerr coupling `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KerrSign {
    /// `λ < 0`, the gravitational case.
    #[default]
    Attractive,
    Repulsive,
}

impl KerrSign {
    pub fn signum(self) -> f64 {
        match self {
            KerrSign::Attractive => -1.0,
            KerrSign::Repulsive => 1.0,
        }
    }
}

/// `H/ħ = ω N + ½ sgn(λ) χ a†a†aa`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KerrParams {
    pub chi: f64,
    pub omega: f64,
    pub sign: KerrSign,
}

impl KerrParams {
    /// Attractive coupling with rate `chi ≥ 0`.
    pub fn new(chi: f64, omega: f64) -> Result<Self> {
        Self::with_sign(chi, omega, KerrSign::Attractive)
    }

    pub fn with_sign(chi: f64, omega: f64, sign: KerrSign) -> Result<Self> {
        if !(chi >= 0.0) || !chi.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("kerr chi={chi}, omega={omega}")));
        }
        Ok(KerrParams { chi, omega, sign })
    }
}

/// Pure state `Σ c_n |n⟩` on a truncated basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
    tail: f64,
}

impl PureState {
    /// Wraps amplitudes; the tail is taken as `max(0, 1 − Σ|c_n|²)`.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::InvalidParameter(format!("dim must be at least 2, got {}", amps.len())));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        Ok(PureState { amps, tail: (1.0 - norm).max(0.0) })
    }

    fn with_tail(amps: Vec<Complex64>, tail: f64) -> Self {
        PureState { amps, tail }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Probability mass discarded by truncation at construction.
    pub fn tail_mass(&self) -> f64 {
        self.tail
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> PureState {
        let n = self.norm_sqr().sqrt();
        PureState::with_tail(self.amps.iter().map(|c| c / n).collect(), 0.0)
    }

    /// `⟨self|other⟩`, padding the shorter state with zeros.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }

    /// Zero-pads or truncates to `dim` levels.
    pub fn resized(&self, dim: usize) -> Result<PureState> {
        let mut amps = self.amps.clone();
        amps.resize(dim, Complex64::new(0.0, 0.0));
        let lost: f64 = self.amps.iter().skip(dim).map(|c| c.norm_sqr()).sum();
        let mut s = PureState::new(amps)?;
        s.tail = self.tail + lost;
        Ok(s)
    }

    pub fn to_mixed(&self) -> MixedState {
        MixedState::from_pure(self)
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amps.iter().enumerate().map(|(n, c)| n as f64 * c.norm_sqr()).sum::<f64>() / self.norm_sqr()
    }

    pub(crate) fn map_diagonal(&self, f: impl Fn(usize) -> Complex64) -> PureState {
        PureState::with_tail(self.amps.iter().enumerate().map(|(n, c)| c * f(n)).collect(), self.tail)
    }
}

/// Density matrix on a truncated basis.
///
/// `normalized == false` marks states produced by trace-changing maps; their
/// expectations are divided by [`MixedState::trace`] where a probability
/// interpretation is needed.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedState {
    dim: usize,
    rho: Vec<Complex64>,
    normalized: bool,
}

impl MixedState {
    /// `rho` is row-major `dim × dim`. Hermiticity is checked to 1e-12 relative to the largest element.
    pub fn new(dim: usize, rho: Vec<Complex64>, normalized: bool) -> Result<Self> {
        if dim < 2 || rho.len() != dim * dim {
            return Err(Error::InvalidParameter(format!("density matrix of length {} for dim {dim}", rho.len())));
        }
        let s = MixedState { dim, rho, normalized };
        let scale = s.rho.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        if s.hermiticity_error() > 1e-12 * scale {
            return Err(Error::InvalidParameter(format!("density matrix not Hermitian ({:e})", s.hermiticity_error())));
        }
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(dim: usize, rho: Vec<Complex64>, normalized: bool) -> Self {
        MixedState { dim, rho, normalized }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let d = psi.dim();
        let c = psi.amplitudes();
        let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
        for m in 0..d {
            for n in 0..d {
                rho[m * d + n] = c[m] * c[n].conj();
            }
        }
        MixedState { dim: d, rho, normalized: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.rho[m * self.dim + n]
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|n| self.get(n, n).re).sum()
    }

    /// `max |ρ_mn − ρ*_nm|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut e: f64 = 0.0;
        for m in 0..self.dim {
            for n in m..self.dim {
                e = e.max((self.get(m, n) - self.get(n, m).conj()).norm());
            }
        }
        e
    }

    /// `Tr ρ² / (Tr ρ)²`.
    pub fn purity(&self) -> f64 {
        let mut p = 0.0;
        for m in 0..self.dim {
            for n in 0..self.dim {
                p += (self.get(m, n) * self.get(n, m)).re;
            }
        }
        p / self.trace().powi(2)
    }

    /// Divides by the trace and marks the result normalized.
    pub fn normalized(&self) -> MixedState {
        let t = self.trace();
        MixedState { dim: self.dim, rho: self.rho.iter().map(|c| c / t).collect(), normalized: true }
    }

    /// Largest element-wise difference to another state of the same dimension.
    pub fn max_abs_diff(&self, other: &MixedState) -> f64 {
        self.rho.iter().zip(&other.rho).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Applies `ρ_mn → f(m, n) ρ_mn`.
    pub fn map_elements(&self, normalized: bool, f: impl Fn(usize, usize) -> Complex64) -> MixedState {
        let d = self.dim;
        let rho = (0..d * d).map(|i| self.rho[i] * f(i / d, i % d)).collect();
        MixedState { dim: d, rho, normalized }
    }
}

/// Builds amplitudes from a generator `next(n, c_{n-1}, c_{n-2}) -> c_n` and
/// measures the tail by continuing the sequence past `dim` until it is negligible.
fn generate(
    dim: usize,
    tolerance: f64,
    first: Complex64,
    mut next: impl FnMut(usize, Complex64, Complex64) -> Complex64,
) -> Result<PureState> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("dim must be at least 2, got {dim}")));
    }
    let mut amps = Vec::with_capacity(dim);
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), first);
    amps.push(cur);
    let mut tail = 0.0;
    let mut peak: f64 = first.norm_sqr();
    let mut last_p = peak;
    let mut n = 1;
    let cap = dim + 200_000;
    loop {
        let c = next(n, cur, prev);
        prev = cur;
        cur = c;
        let p = c.norm_sqr();
        peak = peak.max(p);
        if n < dim {
            amps.push(c);
        } else {
            tail += p;
            // two consecutive terms so that parity-restricted states also terminate
            if p + last_p <= 1e-32 * peak || n >= cap {
                break;
            }
        }
        last_p = p;
        n += 1;
    }
    if tail > tolerance {
        return Err(Error::TruncationTooSmall { dim, tail, tolerance });
    }
    let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    if !((norm + tail - 1.0).abs() < 1e-6) {
        return Err(Error::DomainError(format!("amplitude recurrence lost normalisation ({norm})")));
    }
    Ok(PureState::with_tail(amps, tail))
}

pub fn vacuum(dim: usize) -> Result<PureState> {
    fock_state(0, dim)
}

/// Number state `|n⟩`.
pub fn fock_state(n: usize, dim: usize) -> Result<PureState> {
    if n >= dim {
        return Err(Error::IndexOverflow { m: n, n, dim });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[n] = Complex64::new(1.0, 0.0);
    PureState::new(amps)
}

/// Coherent state `|α⟩`; fails if the Poisson tail beyond `dim − 1` exceeds 1e-10.
pub fn coherent_state(alpha: Complex64, dim: usize) -> Result<PureState> {
    let c0 = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    generate(dim, COHERENT_TAIL_TOLERANCE, c0, |n, c, _| c * alpha / (n as f64).sqrt())
}

/// `(|α⟩ + e^{iθ}|−α⟩) / √(2 + 2 cos θ e^{−2|α|²})`, the exact normalisation.
pub fn cat_state(alpha: Complex64, relative_phase: f64, dim: usize) -> Result<PureState> {
    let coh = coherent_state(alpha, dim)?;
    let e = Complex64::from_polar(1.0, relative_phase);
    let norm2 = 2.0 + 2.0 * relative_phase.cos() * (-2.0 * alpha.norm_sqr()).exp();
    if norm2 <= 0.0 {
        return Err(Error::DomainError(format!("cat state with α={alpha} and phase {relative_phase} vanishes")));
    }
    let k = 1.0 / norm2.sqrt();
    let amps: Vec<Complex64> = coh
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, c)| c * (1.0 + if n % 2 == 0 { e } else { -e }) * k)
        .collect();
    let tail = poisson_tail(alpha.norm_sqr(), dim, |n| (1.0 + if n % 2 == 0 { e } else { -e }).norm_sqr() / norm2);
    if tail > COHERENT_TAIL_TOLERANCE {
        return Err(Error::TruncationTooSmall { dim, tail, tolerance: COHERENT_TAIL_TOLERANCE });
    }
    Ok(PureState::with_tail(amps, tail))
}

/// `Σ_{n ≥ dim} w(n) e^{−μ} μⁿ/n!`.
fn poisson_tail(mu: f64, dim: usize, w: impl Fn(usize) -> f64) -> f64 {
    let mut logp = -mu;
    let mut tail = 0.0;
    let mut n = 0usize;
    loop {
        if n >= dim {
            let p = logp.exp();
            tail += w(n) * p;
            if (n as f64) > mu && p < 1e-40 {
                break;
            }
        }
        n += 1;
        logp += if mu > 0.0 { mu.ln() } else { f64::NEG_INFINITY } - (n as f64).ln();
        if mu == 0.0 {
            break;
        }
    }
    tail
}

/// Yurke–Stoler state `(|α⟩ + i|−α⟩)/√2`.
pub fn yurke_stoler_state(alpha: Complex64, dim: usize) -> Result<PureState> {
    cat_state(alpha, PI / 2.0, dim)
}

/// `D(α) S(ξ) |0⟩` with `S(ξ) = exp((ξ* a² − ξ a†²)/2)`.
///
/// For `α = 0` this gives `⟨q(φ)²⟩ = cosh 2r − cos(2φ − ϑ) sinh 2r`.
pub fn squeezed_coherent_state(alpha: Complex64, xi: SqueezeParams, dim: usize) -> Result<PureState> {
    let (ch, sh) = (xi.r.cosh(), xi.r.sinh());
    let e = Complex64::from_polar(1.0, xi.theta);
    let c0 = (-0.5 * alpha.norm_sqr() - 0.5 * alpha.conj() * alpha.conj() * e * xi.r.tanh()).exp() / ch.sqrt();
    let lin = alpha * ch + alpha.conj() * e * sh;
    generate(dim, SQUEEZED_TAIL_TOLERANCE, c0, |n, c, p| {
        let m = (n - 1) as f64;
        (lin * c - e * sh * m.sqrt() * p) / (ch * (n as f64).sqrt())
    })
}

/// Exact Kerr evolution `c_n → exp(−i[ωn + ½ sgn(λ) χ n(n−1)] t) c_n`.
pub fn kerr_evolve(state: &PureState, k: &KerrParams, t: f64) -> PureState {
    let s = k.sign.signum();
    state.map_diagonal(|n| {
        let n = n as f64;
        Complex64::from_polar(1.0, -(k.omega * n + 0.5 * s * k.chi * n * (n - 1.0)) * t)
    })
}

/// `c_n → e^{−iγnt/ħ} c_n` for an energy `gamma` in joules.
pub fn phase_evolve(state: &PureState, gamma: f64, t: f64) -> PureState {
    phase_rotate(state, gamma * t / HBAR)
}

/// `c_n → e^{−inθ} c_n`.
pub fn phase_rotate(state: &PureState, theta: f64) -> PureState {
    state.map_diagonal(|n| Complex64::from_polar(1.0, -(n as f64) * theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn angle_reduction() {
        assert!((QuadratureAngle::new(-0.5).radians() - (TAU - 0.5)).abs() < 1e-15);
        assert_eq!(QuadratureAngle::new(TAU).radians(), 0.0);
    }

    #[test]
    fn coherent_vacuum_and_norm() {
        let v = coherent_state(c(0.0, 0.0), 4).unwrap();
        assert_eq!(v.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = coherent_state(c(1.0, 1.0), 40).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        let s = coherent_state(c(2.0, 0.0), 40).unwrap();
        assert!((s.mean_photon_number() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn coherent_tail_check() {
        let e = coherent_state(c(3.0, 0.0), 10).unwrap_err();
        assert!(matches!(e, Error::TruncationTooSmall { dim: 10, .. }));
        let s = coherent_state(c(3.0, 0.0), 40).unwrap();
        // Poisson(9) mass beyond 39, summed directly
        let mut p = (-9.0f64).exp();
        let mut tail = 0.0;
        for n in 1..200 {
            p *= 9.0 / n as f64;
            if n >= 40 {
                tail += p;
            }
        }
        assert!((s.tail_mass() - tail).abs() < 1e-25);
    }

    #[test]
    fn yurke_stoler_pattern() {
        let a = 2.0;
        let s = yurke_stoler_state(c(a, 0.0), 50).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        let mut fact = 1.0;
        for n in 0..12 {
            if n > 0 {
                fact *= n as f64;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let expect = c(1.0, sign) * (a.powi(n as i32) / fact.sqrt()) * (-0.5 * a * a).exp() / 2f64.sqrt();
            assert!((s.amplitudes()[n] - expect).norm() < 1e-14);
        }
        let z = yurke_stoler_state(c(0.0, 0.0), 4).unwrap();
        assert!((z.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn squeezed_reduces_to_vacuum_and_coherent() {
        let v = squeezed_coherent_state(c(0.0, 0.0), SqueezeParams::none(), 8).unwrap();
        assert!((v.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        let a = c(0.7, -0.4);
        let s = squeezed_coherent_state(a, SqueezeParams::none(), 30).unwrap();
        let k = coherent_state(a, 30).unwrap();
        assert!(s.amplitudes().iter().zip(k.amplitudes()).all(|(x, y)| (x - y).norm() < 1e-14));
    }

    #[test]
    fn kerr_identity_and_phase() {
        let s = coherent_state(c(1.5, 0.2), 40).unwrap();
        let k = KerrParams::new(0.3, 0.0).unwrap();
        assert_eq!(kerr_evolve(&s, &k, 0.0), s);
        let r = phase_rotate(&s, 0.8);
        let expect = coherent_state(c(1.5, 0.2) * Complex64::from_polar(1.0, -0.8), 40).unwrap();
        assert!((r.fidelity(&expect) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kerr_conserves_number_moments() {
        let s = squeezed_coherent_state(c(1.0, 0.5), SqueezeParams::new(0.4, 0.3).unwrap(), 80).unwrap();
        let k = KerrParams::new(1.0, 0.4).unwrap();
        let e = kerr_evolve(&s, &k, 0.37);
        for p in 1..=4 {
            let mom = |st: &PureState| -> f64 {
                st.amplitudes().iter().enumerate().map(|(n, c)| (n as f64).powi(p) * c.norm_sqr()).sum()
            };
            assert!((mom(&s) - mom(&e)).abs() < 1e-10 * mom(&s).max(1.0));
        }
        assert!((e.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn mixed_state_checks() {
        let s = coherent_state(c(0.5, 0.1), 20).unwrap();
        let m = s.to_mixed();
        assert!((m.trace() - 1.0).abs() < 1e-10);
        assert!((m.purity() - 1.0).abs() < 1e-9);
        assert!(m.hermiticity_error() < 1e-15);
        let mut bad = m.matrix().to_vec();
        bad[1] += c(0.1, 0.0);
        assert!(MixedState::new(20, bad, true).is_err());
    }
}
