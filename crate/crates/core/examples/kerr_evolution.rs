//! Fourth quadrature cumulant of a coherent state under Kerr evolution, next to
//! the phase channel a classical gravitational field would produce.
//!
//! `cargo run --example kerr_evolution`

use nongauss::channels::default_angles;
use nongauss::cumulants::quadrature_cumulants;
use nongauss::fock::{coherent_state, kerr_evolve, phase_rotate, KerrParams};
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    let psi = coherent_state(Complex64::new(2.0, 0.0), 60)?;
    let kerr = KerrParams::new(1.0, 0.0)?;
    let angles = default_angles(16);

    println!("{:>6} {:>14} {:>14}", "chi t", "max|k4| Kerr", "max|k4| phase");
    for step in 0..=10 {
        let t = 0.02 * step as f64;
        let quantum = kerr_evolve(&psi, &kerr, t);
        let classical = phase_rotate(&psi, t);
        let mut worst = [0.0f64; 2];
        for &phi in &angles {
            worst[0] = worst[0].max(quadrature_cumulants(&quantum, phi, 4)?.get(4).abs());
            worst[1] = worst[1].max(quadrature_cumulants(&classical, phi, 4)?.get(4).abs());
        }
        println!("{t:>6.2} {:>14.6e} {:>14.6e}", worst[0], worst[1]);
    }
    Ok(())
}
