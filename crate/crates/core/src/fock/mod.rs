//! Truncated Fock-space states and their statistics.
//!
//! States live in the span of `|0⟩ … |D−1⟩`. Constructors report the
//! probability mass that truncation discards and refuse to build a state whose
//! tail exceeds the tolerance. All evolutions here are exact in the truncated
//! space: Kerr and phase evolution are diagonal, and quadratic generators are
//! exponentiated on the truncated basis.

mod expect;
mod generator;
mod quadrature;
mod state;
mod two_mode;
mod wigner;

pub use expect::{normal_ordered_expect, quadrature_moments, FockState};
pub use generator::{apply_squeeze, SparseGenerator};
pub use quadrature::{hermite_functions, quadrature_pdf, sample_quadrature, SampleSet, SAMPLE_CHUNK};
pub use state::{
    cat_state, coherent_state, fock_state, kerr_evolve, phase_evolve, phase_rotate, squeezed_coherent_state,
    vacuum, yurke_stoler_state, KerrParams, KerrSign, MixedState, PureState, QuadratureAngle, SqueezeParams,
    COHERENT_TAIL_TOLERANCE, SQUEEZED_TAIL_TOLERANCE,
};
pub use two_mode::{beam_splitter, two_mode_evolve, QuadraticGenerator, TwoModeState, DEFAULT_DIMENSION_LIMIT};
pub use wigner::{wigner, WignerGrid, WIGNER_CONVENTION};
