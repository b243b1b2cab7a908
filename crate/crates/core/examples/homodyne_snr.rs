//! Simulated homodyne records of a Kerr-evolved squeezed vacuum: the fourth
//! k-statistic against the exact cumulant and its predicted spread.
//!
//! `cargo run --release --example homodyne_snr`

use nongauss::analytic::{max_snr_squeezed_vacuum, working_precision, KerrMomentTable};
use nongauss::cumulants::k_statistics;
use nongauss::fock::{kerr_evolve, sample_quadrature, squeezed_coherent_state, KerrParams, QuadratureAngle, SqueezeParams};
use nongauss::seed::child_seed;
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    let xi = SqueezeParams::new(0.8, 0.0)?;
    let chi_t = 0.02;
    let m = 2_000;
    let zero = Complex64::new(0.0, 0.0);

    let best = max_snr_squeezed_vacuum(xi, chi_t, m)?;
    println!(
        "optimal phi = {:.4}: kappa4 = {:.4e}, sd(k4) = {:.4e}, SNR = {:.3}",
        best.phi,
        best.kappa4,
        best.var_k4.sqrt(),
        best.snr
    );

    let exact = KerrMomentTable::new(zero, xi, chi_t, 8, working_precision(xi.photons(), 8))?;
    let psi = kerr_evolve(&squeezed_coherent_state(zero, xi, 80)?, &KerrParams::new(1.0, 0.0)?, chi_t);
    let phi = QuadratureAngle::new(best.phi);
    let (kappa4, var, _) = exact.snr(best.phi, m)?;
    let trials = 500;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..trials {
        let k4 = k_statistics(&sample_quadrature(&psi, phi, m as usize, child_seed(42, i))?)?.k4;
        sum += k4;
        sum_sq += k4 * k4;
    }
    let mean = sum / trials as f64;
    let sample_var = (sum_sq - trials as f64 * mean * mean) / (trials as f64 - 1.0);
    println!("{trials} trials of {m} samples: mean k4 = {mean:.4e} (exact {kappa4:.4e})");
    println!("variance of k4 = {sample_var:.4e} (predicted {var:.4e})");
    Ok(())
}
