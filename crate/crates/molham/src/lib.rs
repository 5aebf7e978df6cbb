//! Toy rovibrational Hamiltonians in FBR and DVR, their block encodings,
//! norm estimates, block-encoding cost tables, QPE cost and scaling fits.

pub mod cost;
pub mod discretize;
pub mod encoding;
pub mod fit;
pub mod hamiltonian;
pub mod norms;
pub mod spec;
pub mod units;

pub use cost::{
    lambda_envelope, qpe_cost, strategy_cost, CostConfig, LambdaChoice, QpeCost, QromBackend,
    StrategyCost,
};
pub use discretize::{discretization_bound_check, m_epsilon, DiscretizationCheck};
pub use fit::{fit_scaling, ScalingFit, ScalingSample};
pub use norms::{norm_estimates, NormEstimate, NormTerm, Strategy};

pub use hamiltonian::{
    effective_hamiltonian, eigenvalues, hamiltonian, separable_levels, water_hamiltonian,
    HamiltonianMatrices, DENSE_DIM_LIMIT,
};
pub use spec::{AngularMode, Coupling, PesKind, PesSpec, RadialMode, Shape, ToyMoleculeSpec};
pub use units::{cm_to_hartree, hartree_to_cm, CM_PER_HARTREE};

#[derive(Debug, thiserror::Error)]
pub enum MolhamError {
    #[error("config error at `{field}`: {msg}")]
    Config { field: String, msg: String },
    #[error("grid error: {0}")]
    Grid(String),
    #[error("unsupported shape: {0}")]
    Shape(String),
    #[error("product basis of {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("fit error: {0}")]
    Fit(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Dvr(#[from] dvr::DvrError),
    #[error(transparent)]
    BlockEncoding(#[from] blockenc::BlockEncodingError),
}
