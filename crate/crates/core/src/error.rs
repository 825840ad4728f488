use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid coherent label: {0}")]
    InvalidLabel(String),

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("wave functions live on different grids")]
    GridMismatch,

    #[error("grid [{x_min}, {x_max}) does not cover the required region [{need_min}, {need_max}]")]
    Coverage {
        need_min: f64,
        need_max: f64,
        x_min: f64,
        x_max: f64,
    },

    #[error("non-finite amplitude after propagation step {step}")]
    NonFinite { step: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
