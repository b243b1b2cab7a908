//! Closed-form Kerr expectations, perturbative fourth cumulants and design optimisation.
//!
//! [`KerrMomentTable`] evaluates `⟨a†^m a^n⟩(t)` for squeezed coherent states exactly,
//! with arbitrary-precision arithmetic, so it stays usable at `10¹⁰` photons where no
//! Fock truncation is possible.

mod design;
mod exact;
mod heisenberg;
mod perturbative;
mod su11;

pub use design::{first_order_optimal_snr, max_snr_squeezed_vacuum, optimal_angle_squeezed_vacuum, NonperturbativeSnr};
pub use exact::{kerr_expect_squeezed_coherent, working_precision, KerrMomentTable};
pub use heisenberg::{heisenberg_a_pow, kerr_expect_coherent, normal_ordered_evolution, HeisenbergForm};
pub use perturbative::{
    kappa4_perturbative_squeezed, kappa4_reverse_protocol, kappa4_yurke_stoler, nu, psi, reverse_protocol_state,
    Kappa4Estimate, Kappa4Series, HALF_VARIANCE_TO_UNIT,
};
pub use su11::{a4_squeezed_vacuum, branch_sqrt, squeezed_vacuum_overlap, su11_factors, Su11Factors};
