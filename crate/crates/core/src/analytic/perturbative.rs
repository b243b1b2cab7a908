//! Short-time fourth cumulants.
//!
//! These formulas are expressed for quadratures with vacuum variance ½, i.e.
//! for `q(φ)/√2`. Multiply by [`HALF_VARIANCE_TO_UNIT`] to compare with cumulants
//! of `q(φ)` elsewhere in the crate. SNRs are unaffected by the scale.

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{apply_squeeze, kerr_evolve, squeezed_coherent_state, KerrParams, PureState, SqueezeParams};

/// `κ₄[q] = 4 κ₄[q/√2]`.
pub const HALF_VARIANCE_TO_UNIT: f64 = 4.0;

/// Which second-order coefficient to use for squeezed coherent states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Kappa4Series {
    /// The published `η₁ … η₄` expression.
    Printed,
    /// Second-order coefficient recomputed symbolically; it agrees with `Printed`
    /// at `α = 0` and corrects the `|α|²` bracket.
    #[default]
    Rederived,
}

/// A perturbative value with its expansion parameter `χt·max(|α|², sinh²r, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kappa4Estimate {
    pub value: f64,
    pub expansion_parameter: f64,
}

impl Kappa4Estimate {
    /// Heuristic validity: expansion parameter below 0.1.
    pub fn is_perturbative(&self) -> bool {
        self.expansion_parameter < 0.1
    }
}

/// `ν = 2φ − ϑ`.
pub fn nu(phi: f64, theta: f64) -> f64 {
    2.0 * phi - theta
}

/// `ψ = arg(α² e^{−iϑ})`.
pub fn psi(alpha: Complex64, theta: f64) -> f64 {
    (alpha * alpha * Complex64::from_polar(1.0, -theta)).arg()
}

fn first_order(r: f64, nu: f64) -> f64 {
    let s2 = (2.0 * r).sinh();
    -3.0 * nu.sin() * s2 * s2 * crate::cumulants::squeezed_brackets(r, nu).0
}

fn second_order_printed(alpha_sq: f64, r: f64, nu: f64, psi: f64) -> f64 {
    let (s2, c2) = ((2.0 * r).sinh(), (2.0 * r).cosh());
    let (s4, c4, s6) = ((4.0 * r).sinh(), (4.0 * r).cosh(), (6.0 * r).sinh());
    let (cn, sn, c2n, s2n) = (nu.cos(), nu.sin(), (2.0 * nu).cos(), (2.0 * nu).sin());
    let (cp, sp) = (psi.cos(), psi.sin());
    let eta2 = 6.0 * s2 * s2 + 8.0 * cn * s2 * (5.0 * c2 - 2.0) - c2n * (23.0 * c4 - 16.0 * c2 + 9.0);
    let eta3 = 2.0 * s4 * (cp * (8.0 * c2n - 3.0) + 5.0 * cn) + 3.0 * cp * cn - c2n;
    let eta4 = s6 * (3.0 - 8.0 * c2n - 5.0 * cn * cp) - sn * sp * (cn - 10.0 * s4);
    0.375
        * (s2 * s2 * eta2
            + 2.0 * alpha_sq * (2.0 * s2 * s2 * eta3 + 2.0 * s2 * eta4 + 8.0 * s4 * c2n * cp - 5.0 * s6 * s2n * sp))
}

fn second_order_rederived(alpha_sq: f64, r: f64, nu: f64, psi: f64) -> f64 {
    let sh = |k: f64| (k * r).sinh();
    let ch = |k: f64| (k * r).cosh();
    let (cn, c2n) = (nu.cos(), (2.0 * nu).cos());
    let vacuum = (4.5 * sh(2.0) - 3.75 * sh(4.0) - 1.5 * sh(6.0) + 1.875 * sh(8.0)) * cn
        + (-1.5 * ch(2.0) + 2.625 * ch(4.0) + 1.5 * ch(6.0) - 69.0 / 32.0 * ch(8.0) - 15.0 / 32.0) * c2n
        - 1.125 * ch(4.0)
        + 9.0 / 32.0 * ch(8.0)
        + 27.0 / 32.0;
    let displaced = (-9.0 * sh(2.0) + 3.0 * sh(6.0)) * cn
        + (-45.0 * sh(2.0) + 15.0 * sh(6.0)) / 16.0 * (2.0 * nu + psi).cos()
        + (-33.0 * sh(2.0) + 75.0 * sh(6.0)) / 16.0 * (2.0 * nu - psi).cos()
        + (27.0 * sh(2.0) - 9.0 * sh(6.0)) / 8.0 * psi.cos()
        + 1.5 * (ch(6.0) - ch(2.0)) * (nu + psi).cos()
        + 6.0 * (ch(2.0) - ch(6.0)) * (nu - psi).cos()
        + 51.0 / 8.0 * (ch(2.0) - ch(6.0)) * c2n
        + 27.0 / 8.0 * (ch(6.0) - ch(2.0));
    vacuum + alpha_sq * displaced
}

/// `κ₄(t)` of `q(φ)/√2` for `|α, ξ⟩` to first or second order in `χt`.
pub fn kappa4_perturbative_squeezed(
    alpha: Complex64,
    xi: SqueezeParams,
    phi: f64,
    chi: f64,
    t: f64,
    order: u8,
    series: Kappa4Series,
) -> Kappa4Estimate {
    let x = chi * t;
    let (r, v) = (xi.r(), nu(phi, xi.theta()));
    let mut value = first_order(r, v) * x;
    if order >= 2 {
        let p = psi(alpha, xi.theta());
        let a2 = alpha.norm_sqr();
        value += x * x
            * match series {
                Kappa4Series::Printed => second_order_printed(a2, r, v, p),
                Kappa4Series::Rederived => second_order_rederived(a2, r, v, p),
            };
    }
    Kappa4Estimate { value, expansion_parameter: x * alpha.norm_sqr().max(xi.photons()).max(1.0) }
}

/// `κ₄(t)` of `q(φ)/√2` for `(|α⟩ + i|−α⟩)/√2`, real `α`:
/// `−8α⁴(cos⁴φ + 3 sin⁴φ e^{−8α²}) − 16χtα⁶ sin 2φ [cos²φ − e^{−4α²}(3 + sin²φ(2 − 3e^{−4α²}))]`.
pub fn kappa4_yurke_stoler(alpha: f64, phi: f64, chi: f64, t: f64) -> f64 {
    let a2 = alpha * alpha;
    let (c, s) = (phi.cos(), phi.sin());
    let e4 = (-4.0 * a2).exp();
    -8.0 * a2 * a2 * (c.powi(4) + 3.0 * s.powi(4) * e4 * e4)
        - 16.0 * chi * t * a2.powi(3) * (2.0 * phi).sin() * (c * c - e4 * (3.0 + s * s * (2.0 - 3.0 * e4)))
}

/// First-order `κ₄` of `q(φ)/√2` after squeeze → Kerr for `τ` → unsqueeze:
/// `(3/2) χτ sin 2ν sinh² 2r`.
pub fn kappa4_reverse_protocol(xi: SqueezeParams, phi: f64, chi: f64, tau: f64) -> f64 {
    1.5 * chi * tau * (2.0 * nu(phi, xi.theta())).sin() * (2.0 * xi.r()).sinh().powi(2)
}

/// `S(ξ)† K(τ) S(ξ) |0⟩` on `dim` levels, for oracle checks of the reverse protocol.
pub fn reverse_protocol_state(xi: SqueezeParams, chi: f64, tau: f64, dim: usize) -> Result<PureState> {
    let s = squeezed_coherent_state(Complex64::new(0.0, 0.0), xi, dim)?;
    let k = kerr_evolve(&s, &KerrParams::new(chi, 0.0)?, tau);
    let back = SqueezeParams::new(xi.r(), xi.theta() + std::f64::consts::PI)?;
    apply_squeeze(&k, back, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn vanishes_at_time_zero() {
        let xi = SqueezeParams::new(0.5, 0.2).unwrap();
        for series in [Kappa4Series::Printed, Kappa4Series::Rederived] {
            let k = kappa4_perturbative_squeezed(Complex64::new(1.0, 0.3), xi, 0.4, 1.0, 0.0, 2, series);
            assert_eq!(k.value, 0.0);
        }
    }

    #[test]
    fn series_agree_without_displacement() {
        for r in [0.1, 0.5, 1.2] {
            for nu in [0.3, FRAC_PI_3, 2.0] {
                let a = second_order_printed(0.0, r, nu, 0.0);
                let b = second_order_rederived(0.0, r, nu, 0.0);
                assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "{r} {nu} {a} {b}");
            }
        }
    }

    #[test]
    fn large_squeezing_limit() {
        // |κ₄|/χt at ν = π/2 approaches 24 N³
        let n: f64 = 1e4;
        let r = n.sqrt().asinh();
        let k = kappa4_perturbative_squeezed(Complex64::new(0.0, 0.0), SqueezeParams::new(r, 0.0).unwrap(), FRAC_PI_4, 1.0, 1e-20, 1, Kappa4Series::Printed);
        assert!(((k.value.abs() / 1e-20) / (24.0 * n.powi(3)) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn yurke_stoler_limits() {
        assert!((kappa4_yurke_stoler(2.0, 0.0, 1.0, 0.0) + 128.0).abs() < 1e-12);
        assert!(kappa4_yurke_stoler(5.0, FRAC_PI_2, 1.0, 0.0).abs() < 1e-40);
        let n: f64 = 400.0;
        let slope = kappa4_yurke_stoler(n.sqrt(), FRAC_PI_6, 1.0, 1.0) - kappa4_yurke_stoler(n.sqrt(), FRAC_PI_6, 1.0, 0.0);
        assert!((slope.abs() / (6.0 * 3f64.sqrt() * n.powi(3)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reverse_printed_values() {
        let xi = SqueezeParams::new(0.5, 0.0).unwrap();
        assert_eq!(kappa4_reverse_protocol(xi, 0.0, 1.0, 1e-3), 0.0);
        let v = kappa4_reverse_protocol(xi, FRAC_PI_4 / 2.0, 1.0, 1e-3);
        assert!((v - 1.5e-3 * 1f64.sinh().powi(2)).abs() < 1e-15);
    }
}
