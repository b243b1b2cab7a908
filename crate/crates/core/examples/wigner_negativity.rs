//! Wigner negativity of a Kerr-generated Yurke-Stoler state, printed as a coarse map.
//!
//! `cargo run --release --example wigner_negativity`

use std::f64::consts::PI;

use nongauss::fock::{coherent_state, kerr_evolve, wigner, KerrParams};
use nongauss::{Complex64, Result};

fn main() -> Result<()> {
    // χt = π/2 turns |α⟩ into (|α⟩ + i|−α⟩)/√2 up to a global phase
    let psi = kerr_evolve(&coherent_state(Complex64::new(2.0, 0.0), 60)?, &KerrParams::new(1.0, 0.0)?, PI / 2.0);
    let axis: Vec<f64> = (0..41).map(|i| -8.0 + 0.4 * i as f64).collect();
    let grid = wigner(&psi, &axis, &axis);

    for j in (0..axis.len()).rev().step_by(2) {
        let row: String = (0..axis.len())
            .map(|i| match grid.values[i][j] {
                w if w > 0.05 => '#',
                w if w > 0.005 => '+',
                w if w < -0.05 => '=',
                w if w < -0.005 => '-',
                _ => '.',
            })
            .collect();
        println!("{row}");
    }
    println!("\nmin W = {:.4}, max W = {:.4}, integral = {:.6}", grid.min(), grid.max(), grid.integral());
    println!("{}", grid.convention);
    Ok(())
}
