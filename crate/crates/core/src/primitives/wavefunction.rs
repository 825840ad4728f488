use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::primitives::{Grid, PhysicalParams};

/// Complex amplitudes sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    values: Vec<Complex64>,
    grid: Grid,
    params: PhysicalParams,
}

impl WaveFunction {
    pub fn new(values: Vec<Complex64>, grid: Grid, params: PhysicalParams) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            values,
            grid,
            params,
        })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, params: PhysicalParams, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        Self {
            values,
            grid,
            params,
        }
    }

    pub fn zeros(grid: Grid, params: PhysicalParams) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            grid,
            params,
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.values.iter_mut().for_each(|v| *v *= factor);
        self
    }

    /// Same amplitudes, different values; used to build operator images.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(values, self.grid, self.params)
    }

    /// `∫|ψ|²` by the rectangle rule.
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn max_abs_diff(&self, other: &WaveFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// `⟨a|b⟩ = Σ conj(a_j)·b_j·dx`.
pub fn inner_product(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let sum: Complex64 = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(sum * a.grid.dx())
}

pub fn norm(a: &WaveFunction) -> f64 {
    a.norm_squared().sqrt()
}

/// Truncated occupation-number coefficients `c_0 … c_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
}

impl FockVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a Fock vector needs at least c_0".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// `|n⟩` truncated at order `n_max`.
    pub fn basis(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::InvalidArgument(format!(
                "level {n} above truncation order {n_max}"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ|c_n|²`.
    pub fn partial_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability mass lost to truncation, `1 − Σ|c_n|²`.
    pub fn deficit(&self) -> f64 {
        1.0 - self.partial_norm()
    }
}
