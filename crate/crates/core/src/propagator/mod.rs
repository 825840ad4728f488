//! Numerical evolution oracles for the harmonic Hamiltonian
//! `H = p²/2m + mω²x²/2`.
//!
//! Two structurally different routes are provided: a split-step spectral
//! integrator working on sampled amplitudes, and exact diagonal phase
//! evolution of Fock coefficients. Neither uses the closed-form label
//! rotation, so both can be used to check it.

mod fft;
mod fock;
mod spectral;
mod split_step;

pub use fft::{fourier_transform, inverse_fourier_transform, Fft};
pub use fock::fock_evolve;
pub use spectral::{moments, wavenumbers, Moments, Spectral};
pub use split_step::{split_step_evolve, PropagationPlan, SplitStepper};
