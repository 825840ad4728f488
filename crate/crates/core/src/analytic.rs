//! Closed-form coherent-state quantities.
//!
//! The coordinate representation is evaluated in the grouping
//!
//! ```text
//! ψ_α(x) = (mω/πħ)^{1/4} · exp(−i⟨x⟩⟨p⟩/2ħ) · exp(−mω(x−⟨x⟩)²/2ħ) · exp(i⟨p⟩x/ħ)
//! ```
//!
//! which is algebraically identical to `(mω/πħ)^{1/4} exp(α²/2 − |α|²/2)
//! exp(−(κx − α)²)` with `κ = sqrt(mω/2ħ)`, but never exponentiates the
//! large complex argument `α²/2`. The constant factor `exp(−i⟨x⟩⟨p⟩/2ħ)` is
//! what the phase convention `⟨0|α⟩ = e^{−|α|²/2}` fixes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primitives::{hermite_functions_into, FockVector, Grid, PhysicalParams, WaveFunction};

/// Largest accepted `|α|`.
pub const MAX_LABEL_MODULUS: f64 = 50.0;

/// Half-width, in position standard deviations, that every closed-form
/// evaluation requires around the packet center.
pub const COVERAGE_SIGMAS: f64 = 6.0;

/// Complex eigenvalue `α = α₁ + iα₂` of the annihilation operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentLabel {
    alpha: Complex64,
}

impl CoherentLabel {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::InvalidLabel(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        if alpha.norm() > MAX_LABEL_MODULUS {
            return Err(Error::InvalidLabel(format!(
                "|alpha| = {} exceeds the supported maximum {MAX_LABEL_MODULUS}",
                alpha.norm()
            )));
        }
        Ok(Self { alpha })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn modulus(&self) -> f64 {
        self.alpha.norm()
    }
}

/// Position and momentum expectation values `(⟨x⟩, ⟨p⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectationPair {
    pub x_mean: f64,
    pub p_mean: f64,
}

/// Result of the evolution law `e^{−iHt/ħ}|α⟩ = e^{−iωt/2}|α e^{−iωt}⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolvedLabel {
    pub label: CoherentLabel,
    pub global_phase: Complex64,
    pub t: f64,
}

/// The real phase `φ` with `iφ = ¼(α² − α*²)`, i.e. `φ = α₁α₂`.
pub fn phase_phi(label: &CoherentLabel) -> f64 {
    label.alpha.re * label.alpha.im
}

pub fn expectation_xp(label: &CoherentLabel, params: &PhysicalParams) -> ExpectationPair {
    let l = params.length_scale();
    ExpectationPair {
        x_mean: std::f64::consts::SQRT_2 * l * label.alpha.re,
        p_mean: std::f64::consts::SQRT_2 * (params.hbar() / l) * label.alpha.im,
    }
}

pub fn label_from_expectation(
    pair: &ExpectationPair,
    params: &PhysicalParams,
) -> Result<CoherentLabel> {
    let l = params.length_scale();
    CoherentLabel::from_parts(
        pair.x_mean / (std::f64::consts::SQRT_2 * l),
        pair.p_mean * l / (std::f64::consts::SQRT_2 * params.hbar()),
    )
}

pub fn evolve_label(label: &CoherentLabel, t: f64, params: &PhysicalParams) -> EvolvedLabel {
    let wt = params.omega() * t;
    EvolvedLabel {
        label: CoherentLabel {
            alpha: label.alpha * Complex64::from_polar(1.0, -wt),
        },
        global_phase: Complex64::from_polar(1.0, -0.5 * wt),
        t,
    }
}

/// Radius of the classical orbit of `⟨x⟩`, `sqrt(2ħ/mω)·|α|`.
pub fn orbit_radius(label: &CoherentLabel, params: &PhysicalParams) -> f64 {
    std::f64::consts::SQRT_2 * params.length_scale() * label.modulus()
}

fn require_packet_coverage(center: f64, params: &PhysicalParams, grid: &Grid) -> Result<()> {
    let half = COVERAGE_SIGMAS * params.position_sigma();
    grid.require_coverage(center - half, center + half)
}

fn require_orbit_coverage(radius: f64, params: &PhysicalParams, grid: &Grid) -> Result<()> {
    require_packet_coverage(radius, params, grid)?;
    require_packet_coverage(-radius, params, grid)
}

/// `(mω/πħ)^{1/4} exp(−mω(x−⟨x⟩)²/2ħ) exp(i⟨p⟩x/ħ)`, times `constant`.
fn gaussian_packet(
    pair: ExpectationPair,
    constant: Complex64,
    params: &PhysicalParams,
    grid: &Grid,
) -> WaveFunction {
    let amp = params.ground_amplitude();
    let curvature = params.mass() * params.omega() / (2.0 * params.hbar());
    let wavenumber = pair.p_mean / params.hbar();
    WaveFunction::from_fn(*grid, *params, |x| {
        let d = x - pair.x_mean;
        Complex64::from_polar(amp * (-curvature * d * d).exp(), wavenumber * x) * constant
    })
}

/// The unimodular factor `exp(−i⟨x⟩⟨p⟩/2ħ)` that fixes `⟨0|α⟩ > 0`.
pub fn convention_phase_factor(label: &CoherentLabel) -> Complex64 {
    Complex64::from_polar(1.0, -phase_phi(label))
}

/// Normalized coherent-state wave function `⟨x|α⟩` with the phase chosen so
/// that `⟨0|α⟩ = e^{−|α|²/2}`.
pub fn coherent_wavefunction(
    label: &CoherentLabel,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    let pair = expectation_xp(label, params);
    require_packet_coverage(pair.x_mean, params, grid)?;
    Ok(gaussian_packet(
        pair,
        convention_phase_factor(label),
        params,
        grid,
    ))
}

/// The same Gaussian packet with `exp(−i⟨x⟩⟨p⟩/2ħ)` dropped. Identical
/// density and norm; evolving it by moving `⟨x⟩, ⟨p⟩` along the classical
/// orbit does not solve the Schrödinger equation.
pub fn phaseless_gaussian(
    label: &CoherentLabel,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    let pair = expectation_xp(label, params);
    require_packet_coverage(pair.x_mean, params, grid)?;
    Ok(gaussian_packet(
        pair,
        Complex64::new(1.0, 0.0),
        params,
        grid,
    ))
}

/// General solution `A exp[−(κx − α)²]` of the eigenvalue equation with
/// `A = (mω/πħ)^{1/4}` only, i.e. without the factor `exp(¼(α − α*)²)` that
/// normalizes it. Its norm is `e^{α₂²}`.
pub fn unnormalized_eigenfunction(
    label: &CoherentLabel,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    let pair = expectation_xp(label, params);
    require_packet_coverage(pair.x_mean, params, grid)?;
    let amp = params.ground_amplitude();
    let kappa = params.inverse_width();
    let (a1, a2) = (label.alpha.re, label.alpha.im);
    // −(κx − α₁ − iα₂)² = −(κx − α₁)² + α₂² + 2iα₂(κx − α₁)
    Ok(WaveFunction::from_fn(*grid, *params, |x| {
        let u = kappa * x - a1;
        Complex64::from_polar(amp * (a2 * a2 - u * u).exp(), 2.0 * a2 * u)
    }))
}

/// Truncation order `ceil(|α|² + 10|α| + 20)`.
pub fn default_fock_truncation(label: &CoherentLabel) -> usize {
    let r = label.modulus();
    (r * r + 10.0 * r + 20.0).ceil() as usize
}

/// `c_n = e^{−|α|²/2} αⁿ/√(n!)` for `n = 0..=n_max`, by `c_{n+1} = c_n·α/√(n+1)`.
pub fn fock_coefficients(label: &CoherentLabel, n_max: usize) -> FockVector {
    let alpha = label.alpha;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    coeffs.push(c);
    for n in 0..n_max {
        c = c * alpha / ((n + 1) as f64).sqrt();
        coeffs.push(c);
    }
    FockVector::new(coeffs).expect("at least one coefficient")
}

/// `ψ(x) = Σ_n c_n φ_n(x)`.
pub fn fock_synthesize(coeffs: &FockVector, params: &PhysicalParams, grid: &Grid) -> WaveFunction {
    let c = coeffs.coeffs();
    let mut phi = vec![0.0; c.len()];
    let values = grid
        .points()
        .map(|x| {
            hermite_functions_into(x, params, &mut phi);
            c.iter().zip(&phi).map(|(cn, f)| cn * f).sum()
        })
        .collect();
    WaveFunction::new(values, *grid, *params).expect("one value per grid point")
}

/// `e^{−iHt/ħ}ψ_α` via the evolution law; requires the whole classical orbit
/// (plus six standard deviations) inside the grid.
pub fn analytic_evolved_wavefunction(
    label: &CoherentLabel,
    t: f64,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    require_orbit_coverage(orbit_radius(label, params), params, grid)?;
    let evolved = evolve_label(label, t, params);
    Ok(coherent_wavefunction(&evolved.label, params, grid)?.scaled(evolved.global_phase))
}

/// The naive construction with the convention phase omitted: zero-point
/// phase and classical `⟨x⟩(t), ⟨p⟩(t)`, but no `exp(−i⟨x⟩⟨p⟩/2ħ)`.
pub fn phaseless_evolved_wavefunction(
    label: &CoherentLabel,
    t: f64,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    require_orbit_coverage(orbit_radius(label, params), params, grid)?;
    let evolved = evolve_label(label, t, params);
    Ok(phaseless_gaussian(&evolved.label, params, grid)?.scaled(evolved.global_phase))
}

/// Shape-preserving packet released at rest from `x0`:
///
/// ```text
/// ψ(x,t) = (mω/πħ)^{1/4} exp[−mω(x − x₀cos ωt)²/2ħ]
///          · exp[−i(ωt/2 + (mω/ħ)x₀x sin ωt − (mω/4ħ)x₀² sin 2ωt)]
/// ```
pub fn oscillating_packet(
    x0: f64,
    t: f64,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction> {
    if !x0.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "x0 must be finite, got {x0}"
        )));
    }
    require_orbit_coverage(x0.abs(), params, grid)?;
    let amp = params.ground_amplitude();
    let mw_hbar = params.mass() * params.omega() / params.hbar();
    let wt = params.omega() * t;
    let (sin_wt, cos_wt) = wt.sin_cos();
    let sin_2wt = (2.0 * wt).sin();
    let center = x0 * cos_wt;
    Ok(WaveFunction::from_fn(*grid, *params, |x| {
        let d = x - center;
        let phase = 0.5 * wt + mw_hbar * x0 * x * sin_wt - 0.25 * mw_hbar * x0 * x0 * sin_2wt;
        Complex64::from_polar(amp * (-0.5 * mw_hbar * d * d).exp(), -phase)
    }))
}
