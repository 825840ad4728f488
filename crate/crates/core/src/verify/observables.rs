use num_complex::Complex64;

use crate::analytic::COVERAGE_SIGMAS;
use crate::error::Result;
use crate::primitives::{inner_product, WaveFunction};
use crate::propagator::{moments, Moments, Spectral};

/// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`.
pub fn fidelity(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    let overlap = inner_product(a, b)?;
    Ok(overlap.norm_sqr() / (a.norm_squared() * b.norm_squared()))
}

/// Moments of `psi`, after checking that `⟨x⟩ ± 6Δx` lies on the grid.
fn resolved_moments(psi: &WaveFunction, spectral: &Spectral) -> Result<Moments> {
    let m = moments(psi, spectral)?;
    let half = COVERAGE_SIGMAS * m.x_spread;
    psi.grid()
        .require_coverage(m.x_mean - half, m.x_mean + half)?;
    Ok(m)
}

/// `âψ = sqrt(mω/2ħ)·xψ + sqrt(ħ/2mω)·ψ'` with a spectral derivative.
pub fn annihilation_apply(psi: &WaveFunction) -> Result<WaveFunction> {
    let spectral = Spectral::new(psi.grid())?;
    resolved_moments(psi, &spectral)?;
    let p = psi.params();
    let kappa = p.inverse_width();
    let sigma = p.position_sigma();
    let dpsi = spectral.derivative(psi)?;
    let out = psi
        .values()
        .iter()
        .zip(dpsi.values())
        .zip(psi.grid().points())
        .map(|((v, d), x)| v * (kappa * x) + d * sigma)
        .collect::<Vec<Complex64>>();
    psi.with_values(out)
}

/// `Δx·Δp` by quadrature.
pub fn uncertainty_product(psi: &WaveFunction) -> Result<f64> {
    let spectral = Spectral::new(psi.grid())?;
    let m = resolved_moments(psi, &spectral)?;
    Ok(m.x_spread * m.p_spread)
}
