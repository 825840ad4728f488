use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{
    analytic_evolved_wavefunction, evolve_label, expectation_xp, oscillating_packet,
    phaseless_evolved_wavefunction,
};
use crate::error::{Error, Result};
use crate::primitives::{norm, Grid, PhysicalParams, WaveFunction};
use crate::propagator::Spectral;
use crate::CoherentLabel;

/// A time-parametrized closed-form wave function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Label rotation with zero-point phase applied to the correctly phased
    /// coherent state.
    Coherent(CoherentLabel),
    /// The same construction without `exp(−i⟨x⟩⟨p⟩/2ħ)`.
    Phaseless(CoherentLabel),
    /// Shape-preserving packet released at rest from `x0`.
    Oscillating { x0: f64 },
}

impl Family {
    pub fn evaluate(&self, t: f64, params: &PhysicalParams, grid: &Grid) -> Result<WaveFunction> {
        match self {
            Family::Coherent(l) => analytic_evolved_wavefunction(l, t, params, grid),
            Family::Phaseless(l) => phaseless_evolved_wavefunction(l, t, params, grid),
            Family::Oscillating { x0 } => oscillating_packet(*x0, t, params, grid),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Coherent(_) => "coherent",
            Family::Phaseless(_) => "phaseless",
            Family::Oscillating { .. } => "oscillating",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `||iħ∂ₜψ − Hψ|| / (ħω·||ψ||)`
    pub residual_norm: f64,
    pub t: f64,
    pub family: String,
}

/// `ω·dt_probe = 1e−4`.
pub fn default_probe_step(params: &PhysicalParams) -> f64 {
    1e-4 / params.omega()
}

/// Dimensionless Schrödinger residual of `family` at time `t`, with the time
/// derivative taken by a central difference of width `2·dt_probe` and `Hψ`
/// evaluated spectrally.
pub fn schrodinger_residual(
    family: &Family,
    t: f64,
    dt_probe: f64,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<ResidualReport> {
    if !(dt_probe.is_finite() && dt_probe > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "probe step must be positive, got {dt_probe}"
        )));
    }
    let before = family.evaluate(t - dt_probe, params, grid)?;
    let now = family.evaluate(t, params, grid)?;
    let after = family.evaluate(t + dt_probe, params, grid)?;
    let h_psi = Spectral::new(grid)?.hamiltonian(&now)?;

    let scale = Complex64::new(0.0, params.hbar() / (2.0 * dt_probe));
    let defect = after
        .values()
        .iter()
        .zip(before.values())
        .zip(h_psi.values())
        .map(|((a, b), h)| (a - b) * scale - h)
        .collect();
    let defect = now.with_values(defect)?;
    Ok(ResidualReport {
        residual_norm: norm(&defect) / (params.energy_quantum() * norm(&now)),
        t,
        family: family.tag().to_string(),
    })
}

/// Residual the phaseless family must show at time `t`:
/// `|d(⟨x⟩⟨p⟩)/dt| / (2ħω)`, using `d(⟨x⟩⟨p⟩)/dt = ⟨p⟩²/m − mω²⟨x⟩²` on the
/// classical orbit.
pub fn expected_phase_defect(label: &CoherentLabel, t: f64, params: &PhysicalParams) -> f64 {
    let pair = expectation_xp(&evolve_label(label, t, params).label, params);
    let m = params.mass();
    let w = params.omega();
    let rate = pair.p_mean * pair.p_mean / m - m * w * w * pair.x_mean * pair.x_mean;
    rate.abs() / (2.0 * params.energy_quantum())
}
