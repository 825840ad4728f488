//! Units, grids, Hermite functions and quadrature shared by every other module.

mod grid;
mod hermite;
mod params;
mod wavefunction;

pub use grid::{make_grid, Grid, MIN_GRID_POINTS};
pub use hermite::{hermite_functions, hermite_functions_into};
pub use params::PhysicalParams;
pub use wavefunction::{inner_product, norm, FockVector, WaveFunction};
