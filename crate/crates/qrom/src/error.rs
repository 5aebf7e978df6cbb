use thiserror::Error;

#[derive(Debug, Error)]
pub enum QromError {
    #[error("address {x} out of range for eta = {eta}")]
    Address { x: u64, eta: u32 },
    #[error("payload {y} out of range for width {b}")]
    Payload { y: u64, b: u32 },
    #[error("gate `{0}` has no classical basis-state action")]
    NonClassical(String),
    #[error("gate references qubit {qubit} but the circuit has {width}")]
    Qubit { qubit: usize, width: usize },
    #[error("cannot parse gate line `{0}`")]
    Parse(String),
    #[error("circuit/spectrum mismatch: {0}")]
    Mismatch(String),
    #[error("{qubits} qubits exceeds the dense limit of {limit}")]
    Scale { qubits: u32, limit: u32 },
}

pub type Result<T> = std::result::Result<T, QromError>;
