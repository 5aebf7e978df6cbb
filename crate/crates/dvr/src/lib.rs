//! Gaussian quadratures, discrete-variable-representation transforms and the
//! column recursion used by the DVR oracle.

mod cost;
mod quadrature;
mod recursion;
mod transform;

pub use cost::{dvr_oracle_cost, rounds, segment_init_cost};
pub use quadrature::{gauss_quadrature, orthonormal_values, HoScaling, Quadrature, QuadratureKind};
pub use recursion::{init_columns, recursion_columns, RecursionCoeffs};
pub use transform::{
    build_transform, fbr_potential, ho_position_matrix, write_matrix_csv, write_quadrature_csv,
    DvrTransform,
};

#[derive(Debug, thiserror::Error)]
pub enum DvrError {
    #[error("unsupported quadrature: {0}")]
    Kind(String),
    #[error("quadrature needs at least one point, got {0}")]
    Size(usize),
    #[error("oscillator mass and frequency must be positive")]
    Scaling,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("segment length {f} must be a power of two >= 2 dividing {n}")]
    Segment { n: usize, f: usize },
    #[error("seed column {0} missing")]
    MissingSeed(usize),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
