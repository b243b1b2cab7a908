//! Kerr versus quadratic evolution of a single bosonic mode and the statistics
//! used to tell them apart.
//!
//! The crate is organised in layers:
//!
//! * [`fock`]: truncated Fock-space states, exact Kerr and phase evolution,
//!   quadrature moments, distributions, sampling, Wigner functions and
//!   two-mode quadratic evolution.
//! * [`analytic`]: closed-form Kerr expectations for coherent and squeezed
//!   coherent states, usable at macroscopic photon numbers, together with the
//!   perturbative fourth-cumulant formulas and the design-SNR optimisation.
//! * [`cumulants`]: moments to cumulants, k-statistics, `Var(k4)` and SNR.
//! * [`experiment`]: physical constants, BEC coupling constants and design SNR.
//! * [`channels`]: classical-gravity and stochastic channels (phase channel,
//!   non-Hermitian evolution, dephasing master equation and its Gaussian
//!   mixture solution).
//! * [`cli`]: the command-line driver behind the `nongauss` binary.
//!
//! Quadratures follow `q(φ) = a e^{-iφ} + a† e^{iφ}`, so the vacuum has unit
//! variance.

pub mod acceptance;
pub mod analytic;
pub mod channels;
pub mod cli;
pub mod cumulants;
pub mod error;
pub mod experiment;
pub mod fock;
pub mod seed;

pub use error::{Error, Result};
pub use num_complex::Complex64;
