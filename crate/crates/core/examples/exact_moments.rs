//! Exact normal-ordered moments from the multiprecision Bargmann engine, compared
//! with a truncated Fock-space calculation and the perturbative series.
//!
//! `cargo run --release --example exact_moments`

use nongauss::analytic::{
    kappa4_perturbative_squeezed, working_precision, Kappa4Series, KerrMomentTable, HALF_VARIANCE_TO_UNIT,
};
use nongauss::fock::{kerr_evolve, normal_ordered_expect, squeezed_coherent_state, KerrParams, SqueezeParams};
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    let alpha = Complex64::new(0.7, 0.2);
    let xi = SqueezeParams::new(0.5, 0.3)?;
    let chi_t = 1e-3;
    let prec = working_precision(alpha.norm_sqr() + xi.photons(), 8);
    let table = KerrMomentTable::new(alpha, xi, chi_t, 8, prec)?;
    let psi = kerr_evolve(&squeezed_coherent_state(alpha, xi, 100)?, &KerrParams::new(1.0, 0.0)?, chi_t);

    println!("{prec} bits");
    for (m, n) in [(0, 1), (1, 1), (0, 2), (1, 2), (2, 2), (0, 4)] {
        let exact = table.get(m, n)?;
        let fock = normal_ordered_expect(&psi, m, n)?;
        println!("<a^+{m} a^{n}> = {exact:.12}  |exact - Fock| = {:.1e}", (exact - fock).norm());
    }

    println!("\n{:>6} {:>14} {:>14} {:>14}", "phi", "kappa4 exact", "first order", "second order");
    for phi in [0.2, 0.6, 1.0, 1.4] {
        let exact = table.quadrature_cumulants(phi)[3];
        let series = |order| {
            HALF_VARIANCE_TO_UNIT
                * kappa4_perturbative_squeezed(alpha, xi, phi, 1.0, chi_t, order, Kappa4Series::Rederived).value
        };
        println!("{phi:>6.2} {exact:>14.6e} {:>14.6e} {:>14.6e}", series(1), series(2));
    }
    Ok(())
}
