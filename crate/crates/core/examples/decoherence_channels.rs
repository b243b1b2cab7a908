//! The stochastic master equation against its Gaussian-mixture solution, and the
//! Gaussianity of the result.
//!
//! `cargo run --example decoherence_channels`

use nongauss::channels::{
    default_angles, gaussianity_report, hull_analytic, hull_evolve, master_evolve, ChannelSpec, DEFAULT_HULL_NODES,
};
use nongauss::fock::squeezed_coherent_state;
use nongauss::fock::SqueezeParams;
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    let (lambda_r, lambda_i, kappa) = (0.8, -0.05, 0.5);
    let spec = ChannelSpec::from_couplings(lambda_r, lambda_i, kappa)?;
    println!("kappa_RR = {:.4}, kappa_IR = {:.4}, kappa_II = {:.4}", spec.kappa_rr, spec.kappa_ir, spec.kappa_ii);

    let psi = squeezed_coherent_state(Complex64::new(0.6, 0.2), SqueezeParams::new(0.3, 0.0)?, 40)?;
    let rho0 = psi.to_mixed();
    println!("{:>5} {:>10} {:>12} {:>12} {:>10} {:>10}", "t", "trace", "|m - hull|", "|m - GH|", "max|k3|", "max|k4|");
    for t in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let rho = master_evolve(&rho0, &spec, t);
        let analytic = hull_analytic(&rho0, lambda_r, lambda_i, kappa, t);
        let quadrature = hull_evolve(&rho0, lambda_r, lambda_i, kappa, t, DEFAULT_HULL_NODES)?;
        let report = gaussianity_report(&rho.normalized(), &default_angles(8), 1e-8)?;
        println!(
            "{t:>5.2} {:>10.6} {:>12.2e} {:>12.2e} {:>10.2e} {:>10.2e}",
            rho.trace(),
            rho.max_abs_diff(&analytic),
            rho.max_abs_diff(&quadrature),
            report.max_abs_kappa3,
            report.max_abs_kappa4
        );
    }
    Ok(())
}
