//! Classical-gravity and stochastic channels acting on a single mode.
//!
//! All maps here are diagonal in the number basis: `ρ_mn → f(m, n) ρ_mn`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cumulants::quadrature_cumulants;
use crate::error::{Error, Result};
use crate::fock::{FockState, MixedState, PureState, QuadratureAngle};

/// Default Gauss–Hermite node count for [`hull_evolve`].
pub const DEFAULT_HULL_NODES: usize = 64;
/// Element change tolerated when the node count is doubled.
pub const HULL_TOLERANCE: f64 = 1e-10;
const MAX_HULL_NODES: usize = 512;

/// Coefficients of the single-mode stochastic channel
/// `dρ/dt = iκ_IR[N², ρ] − κ_RR[N, [N, ρ]] + κ_II{N, {N, ρ}}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub lambda_r: f64,
    pub lambda_i: f64,
    pub kappa_rr: f64,
    pub kappa_ir: f64,
    pub kappa_ii: f64,
    pub kappa_geom: f64,
    /// True when the κ's were derived from `(λ_R, λ_I, κ)`.
    pub consistent: bool,
}

impl ChannelSpec {
    /// `κ_RR = κ²λ_R²/4`, `κ_IR = κ²λ_Iλ_R/2`, `κ_II = κ²λ_I²/4`.
    pub fn from_couplings(lambda_r: f64, lambda_i: f64, kappa_geom: f64) -> Result<Self> {
        if !(lambda_r.is_finite() && lambda_i.is_finite() && kappa_geom.is_finite()) {
            return Err(Error::InvalidParameter("channel couplings must be finite".into()));
        }
        let k2 = kappa_geom * kappa_geom;
        Ok(ChannelSpec {
            lambda_r,
            lambda_i,
            kappa_rr: 0.25 * k2 * lambda_r * lambda_r,
            kappa_ir: 0.5 * k2 * lambda_i * lambda_r,
            kappa_ii: 0.25 * k2 * lambda_i * lambda_i,
            kappa_geom,
            consistent: true,
        })
    }

    /// Free coefficients, not tied to any `(λ_R, λ_I, κ)`.
    pub fn direct(kappa_rr: f64, kappa_ir: f64, kappa_ii: f64) -> Result<Self> {
        if !(kappa_rr.is_finite() && kappa_ir.is_finite() && kappa_ii.is_finite()) {
            return Err(Error::InvalidParameter("channel rates must be finite".into()));
        }
        if kappa_rr < 0.0 || kappa_ii < 0.0 {
            return Err(Error::InvalidParameter(format!("κ_RR = {kappa_rr} and κ_II = {kappa_ii} must be non-negative")));
        }
        Ok(ChannelSpec {
            lambda_r: 0.0,
            lambda_i: 0.0,
            kappa_rr,
            kappa_ir,
            kappa_ii,
            kappa_geom: 0.0,
            consistent: false,
        })
    }

    /// `exp{t[−κ_RR(m−n)² + iκ_IR(m²−n²) + κ_II(m+n)²]}`.
    pub fn factor(&self, m: usize, n: usize, t: f64) -> Complex64 {
        let (m, n) = (m as f64, n as f64);
        let re = -self.kappa_rr * (m - n).powi(2) + self.kappa_ii * (m + n).powi(2);
        let im = self.kappa_ir * (m * m - n * n);
        Complex64::new(re * t, im * t).exp()
    }
}

/// `λ_CG = N λ_QG`.
pub fn schrodinger_newton_lambda(lambda_qg: f64, atoms: u64) -> f64 {
    atoms as f64 * lambda_qg
}

/// `γ_CG = ħω − λ_CG`, the rate (in J) of the classical-gravity phase channel
/// `exp(−iγ_CG N t/ħ)`, see [`crate::fock::phase_evolve`].
pub fn schrodinger_newton_gamma(hbar_omega: f64, lambda_cg: f64) -> f64 {
    hbar_omega - lambda_cg
}

/// `c_n → e^{−iλ_R n t} e^{−λ_I n t} c_n`. Returns the renormalised state and the
/// norm `‖ψ(t)‖` before renormalisation.
pub fn nonhermitian_evolve(state: &PureState, lambda_r: f64, lambda_i: f64, t: f64) -> Result<(PureState, f64)> {
    let amps: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::new(-lambda_i * n as f64 * t, -lambda_r * n as f64 * t).exp())
        .collect();
    let raw = PureState::new(amps)?;
    let norm = (raw.norm_sqr() / state.norm_sqr()).sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::DomainError(format!("non-Hermitian evolution produced norm {norm}")));
    }
    Ok((raw.normalized(), norm))
}

/// Element-wise closed form of the stochastic master equation.
///
/// The `κ_IR` term carries the sign that makes this agree with the Gaussian
/// average in [`hull_analytic`]; the differential form written with `−iκ_IR`
/// has the opposite sign. The result is unnormalised when `κ_II > 0`.
pub fn master_evolve(rho: &MixedState, spec: &ChannelSpec, t: f64) -> MixedState {
    let normalized = rho.is_normalized() && (spec.kappa_ii == 0.0 || t == 0.0);
    rho.map_elements(normalized, |m, n| spec.factor(m, n, t))
}

/// A node of the mixture `∫ dg P(g, t) (…)` with `P(g, t) = √(t/π) e^{−g²t}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullSample {
    pub g: f64,
    pub weight: f64,
}

/// Gauss–Hermite nodes and weights for `∫ e^{−x²} f(x) dx`, ascending in `x`.
///
/// Newton iteration on the orthonormal Hermite recurrence; every weight keeps full
/// relative accuracy, including the smallest ones in the tails.
pub fn gauss_hermite(n: usize) -> Result<Vec<(f64, f64)>> {
    if n == 0 || n > MAX_HULL_NODES {
        return Err(Error::InvalidParameter(format!("Gauss-Hermite order {n} outside 1..={MAX_HULL_NODES}")));
    }
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z: f64 = 0.0;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..100 {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Unconverged(format!("Gauss-Hermite root {i} of order {n}")));
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    let mut out: Vec<(f64, f64)> = x.into_iter().zip(w).collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

/// Mixture nodes `g_i = x_i/√t` with weights `w_i/√π`.
pub fn hull_samples(t: f64, nodes: usize) -> Result<Vec<HullSample>> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("hull mixture needs t > 0, got {t}")));
    }
    let s = std::f64::consts::PI.sqrt();
    Ok(gauss_hermite(nodes)?
        .into_iter()
        .map(|(x, w)| HullSample { g: x / t.sqrt(), weight: w / s })
        .collect())
}

/// Per-member Kraus factor `e^{−(iκλ_R + κλ_I) g t n}` on level `n`.
fn member_phase(n: usize, g: f64, lambda_r: f64, lambda_i: f64, kappa: f64, t: f64) -> Complex64 {
    let s = -kappa * g * t * n as f64;
    Complex64::new(s * lambda_i, s * lambda_r).exp()
}

/// How [`hull_evolve_with`] combines the mixture members.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HullNormalization {
    /// Average of the unnormalised members.
    #[default]
    Average,
    /// Each member is divided by its own trace before averaging.
    PerTrajectory,
}

fn hull_sum(
    rho0: &MixedState,
    lambda_r: f64,
    lambda_i: f64,
    kappa: f64,
    t: f64,
    nodes: usize,
    normalization: HullNormalization,
) -> Result<MixedState> {
    let samples = hull_samples(t, nodes)?;
    let d = rho0.dim();
    let members: Vec<MixedState> = samples
        .par_iter()
        .map(|s| {
            let k: Vec<Complex64> = (0..d).map(|n| member_phase(n, s.g, lambda_r, lambda_i, kappa, t)).collect();
            let m = rho0.map_elements(false, |a, b| k[a] * k[b].conj());
            match normalization {
                HullNormalization::Average => m,
                HullNormalization::PerTrajectory => {
                    let tr = m.trace();
                    m.map_elements(false, |_, _| Complex64::new(1.0 / tr, 0.0))
                }
            }
        })
        .collect();
    // summed in node order so the result does not depend on scheduling
    let mut acc = vec![Complex64::new(0.0, 0.0); d * d];
    for (s, m) in samples.iter().zip(&members) {
        for (a, x) in acc.iter_mut().zip(m.matrix()) {
            *a += s.weight * x;
        }
    }
    let normalized = rho0.is_normalized() && (lambda_i == 0.0 || normalization == HullNormalization::PerTrajectory);
    Ok(MixedState::from_parts_unchecked(d, acc, normalized))
}

/// `ρ(t) = ∫ dg P(g, t) K_g ρ(0) K_g†` with `K_g = e^{−(iκλ_R + κλ_I) g t N}`, by
/// Gauss–Hermite quadrature with `nodes` points.
///
/// Fails with `QuadratureUnconverged` if doubling the node count moves any element
/// by more than [`HULL_TOLERANCE`].
pub fn hull_evolve(
    rho0: &MixedState,
    lambda_r: f64,
    lambda_i: f64,
    kappa_geom: f64,
    t: f64,
    nodes: usize,
) -> Result<MixedState> {
    hull_evolve_with(rho0, lambda_r, lambda_i, kappa_geom, t, nodes, HullNormalization::Average)
}

pub fn hull_evolve_with(
    rho0: &MixedState,
    lambda_r: f64,
    lambda_i: f64,
    kappa_geom: f64,
    t: f64,
    nodes: usize,
    normalization: HullNormalization,
) -> Result<MixedState> {
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let a = hull_sum(rho0, lambda_r, lambda_i, kappa_geom, t, nodes, normalization)?;
    let b = hull_sum(rho0, lambda_r, lambda_i, kappa_geom, t, 2 * nodes, normalization)?;
    let change = a.max_abs_diff(&b);
    if !(change <= HULL_TOLERANCE) {
        return Err(Error::QuadratureUnconverged { nodes, change });
    }
    Ok(a)
}

/// Exact Gaussian average `ρ_mn exp{t(iκλ_R(m−n) + κλ_I(m+n))²/4}`.
pub fn hull_analytic(rho0: &MixedState, lambda_r: f64, lambda_i: f64, kappa_geom: f64, t: f64) -> MixedState {
    let normalized = rho0.is_normalized() && (lambda_i == 0.0 || t == 0.0);
    rho0.map_elements(normalized, |m, n| {
        let x = Complex64::new(
            kappa_geom * lambda_i * (m + n) as f64,
            kappa_geom * lambda_r * (m as f64 - n as f64),
        );
        (x * x * (0.25 * t)).exp()
    })
}

/// One pure member `K_g|ψ⟩` of the mixture, renormalised, with its weight and squared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct HullMember {
    pub sample: HullSample,
    pub norm_sqr: f64,
    pub state: PureState,
}

/// The members of the Gauss–Hermite mixture for a pure input. Each is a Gaussian state
/// whenever the input is.
pub fn hull_members(
    psi: &PureState,
    lambda_r: f64,
    lambda_i: f64,
    kappa_geom: f64,
    t: f64,
    nodes: usize,
) -> Result<Vec<HullMember>> {
    hull_samples(t, nodes)?
        .into_iter()
        .map(|s| {
            let amps = psi
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(n, c)| c * member_phase(n, s.g, lambda_r, lambda_i, kappa_geom, t))
                .collect();
            let raw = PureState::new(amps)?;
            Ok(HullMember { sample: s, norm_sqr: raw.norm_sqr(), state: raw.normalized() })
        })
        .collect()
}

/// `κ₃(φ)` and `κ₄(φ)` at one angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleCumulants {
    pub phi: f64,
    pub kappa3: f64,
    pub kappa4: f64,
}

/// Third and fourth quadrature cumulants over a set of angles.
///
/// Non-vanishing values witness non-Gaussian quadrature statistics; vanishing values
/// do not prove that a mixture lies in the Gaussian convex hull.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianityReport {
    pub angles: Vec<AngleCumulants>,
    pub tolerance: f64,
    pub max_abs_kappa3: f64,
    pub max_abs_kappa4: f64,
    pub non_gaussian: bool,
}

/// `k` equally spaced angles in `[0, π)`.
pub fn default_angles(k: usize) -> Vec<QuadratureAngle> {
    (0..k).map(|i| QuadratureAngle::new(std::f64::consts::PI * i as f64 / k as f64)).collect()
}

pub fn gaussianity_report<S: FockState + ?Sized>(
    state: &S,
    angles: &[QuadratureAngle],
    tol: f64,
) -> Result<GaussianityReport> {
    let mut out = Vec::with_capacity(angles.len());
    for &phi in angles {
        let k = quadrature_cumulants(state, phi, 4)?;
        out.push(AngleCumulants { phi: phi.radians(), kappa3: k.get(3), kappa4: k.get(4) });
    }
    let max3 = out.iter().map(|a| a.kappa3.abs()).fold(0.0, f64::max);
    let max4 = out.iter().map(|a| a.kappa4.abs()).fold(0.0, f64::max);
    Ok(GaussianityReport {
        angles: out,
        tolerance: tol,
        max_abs_kappa3: max3,
        max_abs_kappa4: max4,
        non_gaussian: max3 > tol || max4 > tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, vacuum};

    #[test]
    fn gauss_hermite_moments() {
        let q = gauss_hermite(64).unwrap();
        let sp = std::f64::consts::PI.sqrt();
        let m0: f64 = q.iter().map(|(_, w)| w).sum();
        let m2: f64 = q.iter().map(|(x, w)| w * x * x).sum();
        assert!((m0 / sp - 1.0).abs() < 1e-14);
        assert!((m2 / sp - 0.5).abs() < 1e-14);
        // weights decrease monotonically away from the centre
        for i in 1..32 {
            assert!(q[i].1 > q[i - 1].1);
        }
        let e: f64 = q.iter().map(|(x, w)| w * (0.7 * x).cos()).sum();
        assert!((e / sp - (-0.49f64 / 4.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn spec_consistency() {
        let s = ChannelSpec::from_couplings(2.0, 0.5, 0.3).unwrap();
        assert!((s.kappa_rr - 0.09).abs() < 1e-15);
        assert!((s.kappa_ir - 0.045).abs() < 1e-15);
        assert!((s.kappa_ii - 0.005625).abs() < 1e-15);
        assert!(ChannelSpec::direct(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn master_identity_and_dephasing() {
        let rho = coherent_state(Complex64::new(1.0, 0.5), 20).unwrap().to_mixed();
        let zero = ChannelSpec::direct(0.0, 0.0, 0.0).unwrap();
        assert_eq!(master_evolve(&rho, &zero, 3.0), rho);
        let deph = ChannelSpec::direct(0.2, 0.0, 0.0).unwrap();
        let out = master_evolve(&rho, &deph, 1.5);
        for m in 0..20 {
            assert_eq!(out.get(m, m), rho.get(m, m));
        }
        let want = rho.get(1, 4) * (-0.2 * 9.0 * 1.5f64).exp();
        assert!((out.get(1, 4) - want).norm() < 1e-15);
    }

    #[test]
    fn nonhermitian_identity() {
        let v = vacuum(8).unwrap();
        let (s, n) = nonhermitian_evolve(&v, 1.0, 0.0, 2.0).unwrap();
        assert!((n - 1.0).abs() < 1e-15);
        assert!((s.fidelity(&v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hull_zero_time() {
        let rho = vacuum(6).unwrap().to_mixed();
        assert_eq!(hull_evolve(&rho, 1.0, 0.2, 1.0, 0.0, 64).unwrap(), rho);
        assert!(hull_samples(0.0, 8).is_err());
    }
}
