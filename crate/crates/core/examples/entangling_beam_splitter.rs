//! A beam splitter entangles a squeezed vacuum with the vacuum while every
//! reduced quadrature stays Gaussian.
//!
//! `cargo run --release --example entangling_beam_splitter`

use std::f64::consts::FRAC_PI_4;

use nongauss::channels::{default_angles, gaussianity_report};
use nongauss::fock::{
    beam_splitter, squeezed_coherent_state, two_mode_evolve, vacuum, SqueezeParams, TwoModeState,
    DEFAULT_DIMENSION_LIMIT,
};
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    let left = squeezed_coherent_state(Complex64::new(0.0, 0.0), SqueezeParams::new(0.5, 0.0)?, 50)?;
    let input = TwoModeState::product(&left, &vacuum(50)?);
    for theta in [0.0, FRAC_PI_4 / 2.0, FRAC_PI_4] {
        let out = two_mode_evolve(&input, &beam_splitter(), theta, DEFAULT_DIMENSION_LIMIT)?;
        let rho = out.reduced_left();
        let report = gaussianity_report(&rho, &default_angles(8), 1e-8)?;
        println!(
            "theta = {theta:.4}: purity {:.4}, max|k3| {:.1e}, max|k4| {:.1e}, non-Gaussian: {}",
            rho.purity(),
            report.max_abs_kappa3,
            report.max_abs_kappa4,
            report.non_gaussian
        );
    }
    Ok(())
}
