use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::circuit::Circuit;
use crate::BlockEncodingError;

/// Identity residual accepted by every constructor.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Unitarity deviation accepted by every constructor.
pub const UNITARITY_TOL: f64 = 1e-10;

/// A unitary `U` on `η` system qubits (low) and `a` ancillas (high) with
/// `(⟨0|_a ⊗ I) U (|0⟩_a ⊗ I) = A / ζ`.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    pub construction: &'static str,
    pub circuit: Circuit,
    pub system_qubits: u32,
    pub ancilla_qubits: u32,
    pub zeta: f64,
    /// The encoded operator `A`, `2^η` square.
    pub operator: DMatrix<f64>,
    pub residual: f64,
    pub unitarity: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EncodingRecord {
    pub construction: String,
    pub dimension: usize,
    pub system_qubits: u32,
    pub ancilla_qubits: u32,
    pub zeta: f64,
    pub residual: f64,
    pub unitarity_deviation: f64,
}

impl BlockEncoding {
    /// Builds and verifies; fails if either tolerance is exceeded.
    pub fn new(
        construction: &'static str,
        circuit: Circuit,
        system_qubits: u32,
        zeta: f64,
        operator: DMatrix<f64>,
    ) -> Result<Self, BlockEncodingError> {
        let ancilla_qubits = circuit.qubits() - system_qubits;
        let mut be = Self {
            construction,
            circuit,
            system_qubits,
            ancilla_qubits,
            zeta,
            operator,
            residual: f64::NAN,
            unitarity: f64::NAN,
        };
        be.unitarity = be.circuit.unitarity_deviation();
        be.residual = (be.sub_block() * be.zeta - &be.operator).amax();
        if !(be.unitarity < UNITARITY_TOL) {
            return Err(BlockEncodingError::NotUnitary(be.unitarity));
        }
        if !(be.residual < RESIDUAL_TOL) {
            return Err(BlockEncodingError::Residual(be.residual));
        }
        Ok(be)
    }

    pub fn dim(&self) -> usize {
        1 << self.system_qubits
    }

    /// `(⟨0|_a ⊗ I) U (|0⟩_a ⊗ I)`, computed by running `U` on every system basis state.
    pub fn sub_block(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut state = vec![0.0; self.circuit.dim() * n];
        for j in 0..n {
            state[j * n + j] = 1.0;
        }
        let out = self.circuit.apply_batch(state, n);
        DMatrix::from_row_slice(n, n, &out[..n * n])
    }

    /// Largest eigenvalue magnitude (symmetric operators) or largest singular value.
    pub fn spectral_radius(&self) -> f64 {
        let a = &self.operator;
        if (a - a.transpose()).amax() <= 1e-12 * a.amax().max(1.0) {
            SymmetricEigen::new(a.clone()).eigenvalues.amax()
        } else {
            a.clone().singular_values().max()
        }
    }

    pub fn record(&self) -> EncodingRecord {
        EncodingRecord {
            construction: self.construction.to_string(),
            dimension: self.dim(),
            system_qubits: self.system_qubits,
            ancilla_qubits: self.ancilla_qubits,
            zeta: self.zeta,
            residual: self.residual,
            unitarity_deviation: self.unitarity,
        }
    }
}
