use serde::Serialize;

use crate::error::{Error, Result};

/// Mass, angular frequency and reduced Planck constant of the oscillator.
///
/// Any consistent unit system works; the CLI defaults to oscillator units
/// `ħ = m = ω = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    mass: f64,
    omega: f64,
    hbar: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        let params = Self { mass, omega, hbar };
        let length = params.length_scale();
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidParams(format!(
                "characteristic length sqrt(hbar/(m*omega)) = {length} is not usable"
            )));
        }
        Ok(params)
    }

    /// `ħ = m = ω = 1`.
    pub fn oscillator_units() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `L = sqrt(ħ/(mω))`.
    pub fn length_scale(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    /// `ħ/L = sqrt(ħmω)`.
    pub fn momentum_scale(&self) -> f64 {
        (self.hbar * self.mass * self.omega).sqrt()
    }

    /// Standard deviation of the ground-state position density, `sqrt(ħ/(2mω))`.
    pub fn position_sigma(&self) -> f64 {
        self.length_scale() / std::f64::consts::SQRT_2
    }

    /// `sqrt(mω/(2ħ))`, the factor turning a coordinate into the
    /// dimensionless variable that enters `exp[-(κx - α)²]`.
    pub fn inverse_width(&self) -> f64 {
        1.0 / (std::f64::consts::SQRT_2 * self.length_scale())
    }

    /// `(mω/(πħ))^{1/4}`.
    pub fn ground_amplitude(&self) -> f64 {
        (self.mass * self.omega / (std::f64::consts::PI * self.hbar)).powf(0.25)
    }

    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }

    pub fn energy_quantum(&self) -> f64 {
        self.hbar * self.omega
    }
}
