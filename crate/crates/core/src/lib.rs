//! Coherent states of the one-dimensional harmonic oscillator.
//!
//! The crate evaluates coherent-state wave functions with the phase fixed by
//! `⟨0|α⟩ = e^{-|α|²/2}`, evolves them with the closed-form label rotation
//! `α → α e^{-iωt}`, and checks that law against two independent numerical
//! evolutions: a split-step spectral integrator and exact Fock-basis phase
//! evolution. The [`verify`] module turns the physical claims into measured
//! checks, including the Schrödinger residual that separates the correctly
//! phased family from the Gaussian packet with the phase factor dropped.
//!
//! Modules:
//! - [`primitives`]: physical parameters, grids, Hermite functions, quadrature.
//! - [`analytic`]: closed-form labels, wave functions, Fock coefficients.
//! - [`propagator`]: radix-2 FFT, split-step and Fock-phase evolution.
//! - [`verify`]: eigenrelation, uncertainty, residual and trajectory checks.

pub mod analytic;
pub mod error;
pub mod primitives;
pub mod propagator;
pub mod verify;

pub use analytic::{CoherentLabel, EvolvedLabel, ExpectationPair};
pub use error::{Error, Result};
pub use primitives::{FockVector, Grid, PhysicalParams, WaveFunction};

pub use num_complex::Complex64;
