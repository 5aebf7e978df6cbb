use blockenc::{dsparse_fused, symmetry_swap_reduction, BlockEncoding, SparseOracle};
use nalgebra::DMatrix;

use crate::hamiltonian::{effective_hamiltonian, hamiltonian};
use crate::spec::{Shape, ToyMoleculeSpec};
use crate::MolhamError;

fn pow2_bits(n: usize, what: &str) -> Result<u32, MolhamError> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(MolhamError::Shape(format!("{what} size {n} is not a power of two")))
    }
}

/// Fused d-sparse encoding of a dense symmetric matrix.
pub fn dense_encoding(h: &DMatrix<f64>) -> Result<BlockEncoding, MolhamError> {
    pow2_bits(h.nrows(), "matrix")?;
    Ok(dsparse_fused(&SparseOracle::from_dense(h)?)?)
}

/// Verified encoding of the DVR Hamiltonian of any toy system.
pub fn dvr_encoding(spec: &ToyMoleculeSpec) -> Result<BlockEncoding, MolhamError> {
    for (i, &n) in spec.sizes().iter().enumerate() {
        pow2_bits(n, &format!("mode {i}"))?;
    }
    dense_encoding(&hamiltonian(spec)?.dvr)
}

/// Exchange-symmetric triatomic: encodes `H_eff` and restores `H` with a
/// controlled swap of the two stretch registers, so `ζ = 2 ζ_eff`.
pub fn water_block_encoding(spec: &ToyMoleculeSpec) -> Result<BlockEncoding, MolhamError> {
    if spec.shape() != Shape::Triatomic || !spec.is_exchange_symmetric() {
        return Err(MolhamError::Shape("needs an exchange-symmetric triatomic".into()));
    }
    let dims = spec.sizes();
    let lr = pow2_bits(dims[0], "radial")?;
    let lt = pow2_bits(dims[2], "angular")?;
    let eff = dense_encoding(&effective_hamiltonian(spec)?.dvr)?;
    let full = hamiltonian(spec)?.dvr;
    let pairs: Vec<(u32, u32)> = (0..lr).map(|i| (lt + i, lt + lr + i)).collect();
    Ok(symmetry_swap_reduction(&eff, &pairs, &full)?)
}
