use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::SqueezeParams;

/// Disentangling data for `⟨α,ξ| e^{inχtN} |ξ,α⟩`, with
/// `z = cos(nχt) − i cosh 2r sin(nχt)`, `β = (1 − z)/z`,
/// `Λ± = i sinh 2r sin(nχt) e^{±iϑ}/z` and `G₀ = exp(β|α|² − ½Λ₊α*² − ½Λ₋α²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su11Factors {
    pub z: Complex64,
    /// `√z` on the branch `√|z| (z + |z|)/|z + |z||`.
    pub sqrt_z: Complex64,
    pub beta: Complex64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    pub g0: Complex64,
}

/// `√z = √|z| (z + |z|)/|z + |z||`; undefined on the negative real axis.
pub fn branch_sqrt(z: Complex64) -> Result<Complex64> {
    let w = z + z.norm();
    if w.norm() == 0.0 {
        return Err(Error::BranchSingularity { re: z.re, im: z.im });
    }
    Ok(w / w.norm() * z.norm().sqrt())
}

pub fn su11_factors(alpha: Complex64, xi: SqueezeParams, n: u32, chi: f64, t: f64) -> Result<Su11Factors> {
    let x = n as f64 * chi * t;
    let (c2, s2) = ((2.0 * xi.r()).cosh(), (2.0 * xi.r()).sinh());
    let z = Complex64::new(x.cos(), -c2 * x.sin());
    let sqrt_z = branch_sqrt(z)?;
    let beta = (1.0 - z) / z;
    let k = Complex64::new(0.0, s2 * x.sin()) / z;
    let lambda_plus = k * Complex64::from_polar(1.0, xi.theta());
    let lambda_minus = k * Complex64::from_polar(1.0, -xi.theta());
    let g0 = (beta * alpha.norm_sqr() - 0.5 * lambda_plus * alpha.conj().powu(2) - 0.5 * lambda_minus * alpha.powu(2)).exp();
    Ok(Su11Factors { z, sqrt_z, beta, lambda_plus, lambda_minus, g0 })
}

/// `⟨ξ| e^{inχtN} |ξ⟩ = e^{−inχt/2}/√z`, valid while the branch of `√z` is continuous from `t = 0`.
pub fn squeezed_vacuum_overlap(xi: SqueezeParams, n: u32, chi: f64, t: f64) -> Result<Complex64> {
    let f = su11_factors(Complex64::new(0.0, 0.0), xi, n, chi, t)?;
    Ok(Complex64::from_polar(1.0, -0.5 * n as f64 * chi * t) / f.sqrt_z)
}

/// `⟨ξ| a⁴(t) |ξ⟩ = 3 e^{−4iχt + 2iϑ} sinh²2r / (4 z^{5/2})` with `z` at `n = 4`.
pub fn a4_squeezed_vacuum(xi: SqueezeParams, chi: f64, t: f64) -> Result<Complex64> {
    let f = su11_factors(Complex64::new(0.0, 0.0), xi, 4, chi, t)?;
    let num = Complex64::from_polar(3.0 * (2.0 * xi.r()).sinh().powi(2), -4.0 * chi * t + 2.0 * xi.theta());
    Ok(num / (4.0 * f.sqrt_z.powu(5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::KerrMomentTable;
    use crate::fock::{kerr_evolve, normal_ordered_expect, squeezed_coherent_state, KerrParams};

    #[test]
    fn trivial_limits() {
        let xi = SqueezeParams::new(0.5, 0.3).unwrap();
        let f = su11_factors(Complex64::new(1.0, 0.5), xi, 3, 0.2, 0.0).unwrap();
        assert_eq!(f.z, Complex64::new(1.0, 0.0));
        assert_eq!(f.beta, Complex64::new(0.0, 0.0));
        assert_eq!((f.lambda_plus.norm(), f.lambda_minus.norm()), (0.0, 0.0));
        let f = su11_factors(Complex64::new(0.0, 0.0), SqueezeParams::none(), 2, 0.3, 1.0).unwrap();
        assert!((f.z - Complex64::from_polar(1.0, -0.6)).norm() < 1e-15);
        assert!((f.beta - (1.0 - f.z) / f.z).norm() < 1e-15);
    }

    #[test]
    fn branch_rule() {
        for z in [Complex64::new(0.3, 2.0), Complex64::new(1.0, -0.1), Complex64::new(-0.5, 0.7)] {
            let s = branch_sqrt(z).unwrap();
            assert!((s * s - z).norm() < 1e-14);
            if z.re > 0.0 {
                assert!((s - z.sqrt()).norm() < 1e-15);
            }
        }
        assert!(matches!(branch_sqrt(Complex64::new(-2.0, 0.0)), Err(Error::BranchSingularity { .. })));
    }

    #[test]
    fn vacuum_overlap_matches_exact_engine() {
        let xi = SqueezeParams::new(0.7, 0.4).unwrap();
        for chi_t in [1e-3, 0.05, 0.2] {
            let o = squeezed_vacuum_overlap(xi, 1, 1.0, chi_t).unwrap();
            // ⟨a† a⟩-free check: ⟨e^{iθN}⟩ from the density in the number basis
            let s = squeezed_coherent_state(Complex64::new(0.0, 0.0), xi, 160).unwrap();
            let direct: Complex64 = s
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(n, c)| c.norm_sqr() * Complex64::from_polar(1.0, n as f64 * chi_t))
                .sum();
            assert!((o - direct).norm() < 1e-12, "{chi_t}");
        }
    }

    #[test]
    fn a4_closed_form_matches_fock() {
        let xi = SqueezeParams::new(0.5, 0.9).unwrap();
        let v = a4_squeezed_vacuum(xi, 1.0, 0.01).unwrap();
        let s = squeezed_coherent_state(Complex64::new(0.0, 0.0), xi, 150).unwrap();
        let e = kerr_evolve(&s, &KerrParams::new(1.0, 0.0).unwrap(), 0.01);
        let f = normal_ordered_expect(&e, 0, 4).unwrap();
        assert!((v - f).norm() < 1e-10 * f.norm());
        let t = KerrMomentTable::new(Complex64::new(0.0, 0.0), xi, 0.01, 4, 128).unwrap();
        assert!((t.get(0, 4).unwrap() - v).norm() < 1e-12 * v.norm());
    }
}
