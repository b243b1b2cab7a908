use num_complex::Complex64;

use super::exact::{working_precision, KerrMomentTable};
use crate::cumulants::snr_squeezed_vacuum_first_order;
use crate::error::{Error, Result};
use crate::fock::{QuadratureAngle, SqueezeParams};

/// Angles `φ = ½[ϑ + ½ acos y±]` maximising the first-order squeezed-vacuum SNR, with
/// `y± = [s²(s² − 2) ± 2√2 sinh 4r]/(s² + 2)²` and `s = sinh 2r`.
///
/// Returns `[φ(y₊), φ(y₋)]`; the mirror angles `½[ϑ − ½ acos y±]` give the same |SNR|.
pub fn optimal_angle_squeezed_vacuum(xi: SqueezeParams) -> Result<[QuadratureAngle; 2]> {
    let s = (2.0 * xi.r()).sinh();
    let s2 = s * s;
    // 1 ∓ y± formed without cancellation so acos y keeps its accuracy near y = ±1
    let cross = 4.0 * 2f64.sqrt() * s * (1.0 + s2).sqrt();
    let den = (s2 + 2.0).powi(2);
    let mut out = [QuadratureAngle::new(0.0); 2];
    for (o, sign) in out.iter_mut().zip([1.0, -1.0]) {
        let one_minus = (6.0 * s2 + 4.0 - sign * cross) / den;
        let one_plus = (2.0 * s2 * s2 + 2.0 * s2 + 4.0 + sign * cross) / den;
        if !(one_minus >= 0.0 && one_plus >= 0.0) {
            let y = 1.0 - one_minus;
            return Err(Error::DomainError(format!("optimal-angle argument y = {y} outside [-1, 1]")));
        }
        let acos_y = 2.0 * one_minus.sqrt().atan2(one_plus.sqrt());
        *o = QuadratureAngle::new(0.5 * (xi.theta() + 0.5 * acos_y));
    }
    Ok(out)
}

/// Maximum over `φ` of the SNR computed from exact cumulants up to order 8.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonperturbativeSnr {
    pub phi: f64,
    /// `ν = 2φ − ϑ`, kept unreduced since optimal values are tiny for large squeezing.
    pub nu: f64,
    pub kappa4: f64,
    pub var_k4: f64,
    pub snr: f64,
    pub snr_per_sqrt_m: f64,
    pub precision: u32,
}

fn evaluate(table: &KerrMomentTable, theta: f64, nu: f64, m: u64) -> Result<(f64, f64, f64)> {
    table.snr(0.5 * (nu + theta), m)
}

/// Maximises the SNR of `m` repetitions over the quadrature angle for a
/// squeezed vacuum after Kerr evolution `χt`, using exact moments.
///
/// The result is computed at two working precisions and rejected if they disagree.
pub fn max_snr_squeezed_vacuum(xi: SqueezeParams, chi_t: f64, m: u64) -> Result<NonperturbativeSnr> {
    let photons = xi.photons();
    let prec = working_precision(photons, 8);
    let table = KerrMomentTable::new(Complex64::new(0.0, 0.0), xi, chi_t, 8, prec)?;
    let theta = xi.theta();

    // ν on a logarithmic grid of both signs, down to well below 1/N
    let lo = (1e-3 / (photons + 1.0)).ln();
    let hi = std::f64::consts::FRAC_PI_2.ln();
    let steps = 400;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let grid: Vec<f64> = (0..=steps).map(|i| (lo + (hi - lo) * i as f64 / steps as f64).exp()).collect();
    let mut candidates: Vec<f64> = grid.iter().flat_map(|&v| [v, -v]).collect();
    if let Ok(angles) = optimal_angle_squeezed_vacuum(xi) {
        candidates.extend(angles.iter().map(|a| 2.0 * a.radians() - theta));
    }
    for &nu in &candidates {
        let s = evaluate(&table, theta, nu, m)?.2;
        if s.is_finite() && s > best.0 {
            best = (s, nu);
        }
    }
    // golden-section refinement in log|ν| over one grid cell each side
    let sign = best.1.signum();
    let step = (hi - lo) / steps as f64;
    let (mut a, mut b) = (best.1.abs().ln() - step, best.1.abs().ln() + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |u: f64| evaluate(&table, theta, sign * u.exp(), m).map(|r| r.2);
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let nu = sign * (0.5 * (a + b)).exp();
    let (kappa4, var_k4, snr) = evaluate(&table, theta, nu, m)?;
    let snr = if snr >= best.0 { snr } else { best.0 };

    let check = KerrMomentTable::new(Complex64::new(0.0, 0.0), xi, chi_t, 8, prec + 64)?;
    let again = evaluate(&check, theta, nu, m)?.2;
    if !((again - snr).abs() <= 1e-8 * snr.abs().max(1e-300)) {
        return Err(Error::Unconverged(format!(
            "SNR changed from {snr} to {again} when raising precision from {prec} bits"
        )));
    }
    Ok(NonperturbativeSnr {
        phi: 0.5 * (nu + theta),
        nu,
        kappa4,
        var_k4,
        snr,
        snr_per_sqrt_m: snr / (m as f64).sqrt(),
        precision: prec,
    })
}

/// First-order SNR at the optimal angle.
pub fn first_order_optimal_snr(xi: SqueezeParams, chi_t: f64, m: u64) -> Result<f64> {
    let a = optimal_angle_squeezed_vacuum(xi)?;
    Ok(snr_squeezed_vacuum_first_order(xi.r(), 2.0 * a[0].radians() - xi.theta(), chi_t, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_best(r: f64) -> f64 {
        let mut best = (0.0, 0.0);
        for i in 1..2_000_000 {
            let nu = i as f64 * std::f64::consts::PI / 2_000_000.0;
            let s = snr_squeezed_vacuum_first_order(r, nu, 1.0, 1);
            if s > best.0 {
                best = (s, nu);
            }
        }
        best.1
    }

    #[test]
    fn angles_maximise_first_order_snr() {
        let xi = SqueezeParams::new(0.5, 0.3).unwrap();
        let a = optimal_angle_squeezed_vacuum(xi).unwrap();
        let s: Vec<f64> = a
            .iter()
            .map(|p| snr_squeezed_vacuum_first_order(0.5, 2.0 * p.radians() - 0.3, 1.0, 1))
            .collect();
        assert!((s[0] - s[1]).abs() < 1e-12 * s[0]);
        let peak = scan_best(0.5);
        let nus: Vec<f64> = a.iter().map(|p| 2.0 * p.radians() - 0.3).collect();
        assert!(nus.iter().any(|n| (n - peak).abs() < 2e-4), "{nus:?} vs {peak}");
        let scanned = snr_squeezed_vacuum_first_order(0.5, peak, 1.0, 1);
        assert!(s[0] >= scanned * (1.0 - 1e-6));
    }

    #[test]
    fn large_squeezing_limit_is_two_root_six() {
        let n: f64 = 1e8;
        let xi = SqueezeParams::new(n.sqrt().asinh(), 0.0).unwrap();
        let snr = first_order_optimal_snr(xi, 1.0 / (n * n), 1).unwrap();
        assert!((snr - 2.0 * 6f64.sqrt()).abs() < 1e-3);
    }
}
