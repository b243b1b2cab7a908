//! Signal-to-noise ratio of a Cs BEC experiment as the condensate mass grows.
//!
//! `cargo run --release --example design_sweep`

use nongauss::experiment::{
    design_snr, interaction_scale, parse_quantity, planck_ratio, ConstantsRegistry, DesignMode, Dimension,
    ExperimentParams,
};
use nongauss::Result;

fn main() -> Result<()> {
    let registry = ConstantsRegistry::default();
    let cs = registry.mass("Cs133")?;
    let radius = parse_quantity("200 um", Dimension::Length)?;
    let time = parse_quantity("2 s", Dimension::Time)?;
    let runs = 40_000;

    println!("{:>10} {:>12} {:>12} {:>12} {:>12}", "M [kg]", "N", "chi t N^2", "SNR (1st)", "SNR (exact)");
    for total in [1e-16, 3e-16, 1e-15, 3e-15, 1e-14] {
        let p = ExperimentParams::from_total_mass(cs, total, radius, time, runs)?;
        let first = design_snr(&p, None, DesignMode::FirstOrder)?;
        let exact = design_snr(&p, None, DesignMode::Nonperturbative)?;
        println!("{total:>10.1e} {:>12.4e} {:>12.4e} {first:>12.4} {exact:>12.4}", p.atom_count, p.chi_t_n2());
    }

    let m = 1e-14;
    println!(
        "\nchi t N^2 = {:.5}, (M/M_P)(dtau/t_P) = {:.5} at M = {m:e} kg",
        interaction_scale(m, radius, time),
        planck_ratio(m, radius, time)
    );
    Ok(())
}
