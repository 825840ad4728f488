use serde::Serialize;

use crate::error::{Error, Result};
use crate::primitives::PhysicalParams;

pub const MIN_GRID_POINTS: usize = 16;

/// Uniform periodic grid: `x_j = x_min + j·dx`, `j = 0..n`, with `x_max`
/// itself excluded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite, got [{x_min}, {x_max})"
            )));
        }
        if x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "x_max ({x_max}) must exceed x_min ({x_min})"
            )));
        }
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        if n < MIN_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "at least {MIN_GRID_POINTS} points required, got {n}"
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        let dx = self.dx();
        (0..self.n).map(move |j| self.x_min + j as f64 * dx)
    }

    /// Fails with [`Error::Coverage`] unless `[lo, hi]` lies inside the grid.
    pub fn require_coverage(&self, lo: f64, hi: f64) -> Result<()> {
        if lo >= self.x_min && hi <= self.x_max {
            Ok(())
        } else {
            Err(Error::Coverage {
                need_min: lo,
                need_max: hi,
                x_min: self.x_min,
                x_max: self.x_max,
            })
        }
    }

    /// Same grid translated by `shift`.
    pub fn shifted(&self, shift: f64) -> Result<Self> {
        Self::new(self.x_min + shift, self.x_max + shift, self.n)
    }
}

/// Grid symmetric about the origin with half-width
/// `center_span + sigma_multiple·sqrt(ħ/(2mω))`.
///
/// `center_span` is the largest distance of the packet center from the
/// origin (for an oscillating coherent state, the orbit amplitude).
pub fn make_grid(
    params: &PhysicalParams,
    center_span: f64,
    sigma_multiple: f64,
    n: usize,
) -> Result<Grid> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if !(center_span.is_finite() && center_span >= 0.0) {
        return Err(Error::InvalidGrid(format!(
            "center span must be finite and non-negative, got {center_span}"
        )));
    }
    if !(sigma_multiple.is_finite() && sigma_multiple >= 4.0) {
        return Err(Error::InvalidGrid(format!(
            "sigma multiple must be at least 4, got {sigma_multiple}"
        )));
    }
    let half_width = center_span + sigma_multiple * params.position_sigma();
    Grid::new(-half_width, half_width, n)
}
