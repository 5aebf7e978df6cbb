//! Sparse-access encodings.
//!
//! Layout: row register `0..η` (the system), column/`l` register `η..2η`,
//! flags above. `f(j, l)` comes from [`SparseOracle::column_table`].

use nalgebra::DMatrix;

use crate::circuit::{register_swap, state_preparation, Circuit, Factor};
use crate::encoding::BlockEncoding;
use crate::sparse::SparseOracle;
use crate::BlockEncodingError;

fn check(a: &SparseOracle) -> Result<f64, BlockEncodingError> {
    let norm = a.max_abs();
    if norm == 0.0 {
        return Err(BlockEncodingError::Degenerate);
    }
    if !a.is_symmetric(0.0) {
        return Err(BlockEncodingError::Shape("sparse encodings need a symmetric matrix".into()));
    }
    Ok(norm)
}

/// `|0⟩ ↦ ρ^{-1/2} Σ_{l<ρ} |l⟩` on the `l` register.
fn prep_l(eta: u32, rho: usize) -> Factor {
    let dim = 1usize << eta;
    let amp = 1.0 / (rho as f64).sqrt();
    let v: Vec<f64> = (0..dim).map(|l| if l < rho { amp } else { 0.0 }).collect();
    Factor::dense((eta..2 * eta).collect(), state_preparation(&v))
}

/// `|j⟩|l⟩ ↦ |j⟩|f(j, l)⟩`.
fn o_f(a: &SparseOracle) -> Factor {
    let eta = a.eta();
    let dim = 1usize << eta;
    let mut perm = vec![0u32; dim * dim];
    for j in 0..dim {
        for (l, c) in a.column_table(j).into_iter().enumerate() {
            perm[j | l << eta] = (j | c << eta) as u32;
        }
    }
    Factor::perm((0..2 * eta).collect(), perm)
}

/// Rotation on `target`, selected by `(j, k)`, sending `|0⟩` to `amp(j,k)|0⟩ + √(1-amp²)|1⟩`.
fn flag_rotation(a: &SparseOracle, target: u32, amp: impl Fn(f64) -> f64) -> Factor {
    let eta = a.eta();
    let dim = 1usize << eta;
    let blocks = (0..dim * dim)
        .map(|u| {
            let (j, k) = (u & (dim - 1), u >> eta);
            let c = amp(a.get(j, k)).clamp(-1.0, 1.0);
            let s = (1.0 - c * c).max(0.0).sqrt();
            [c, -s, s, c]
        })
        .collect();
    Factor::rotation(target, &(0..2 * eta).collect::<Vec<_>>(), blocks)
}

/// Two isometries `T1`, `T2` with `T2† T1` encoding `A / (ρ ‖A‖max)`.
///
/// `T1` loads `sign(A_jk) √(|A_jk|/‖A‖)` on flag 1; `T2` loads the unsigned
/// root on flag 2 with the registers exchanged.
pub fn dsparse_standard(a: &SparseOracle) -> Result<BlockEncoding, BlockEncodingError> {
    let norm = check(a)?;
    let eta = a.eta();
    let (f1, f2) = (2 * eta, 2 * eta + 1);
    let t = |target: u32, signed: bool| -> Result<Circuit, BlockEncodingError> {
        let mut c = Circuit::new(2 * eta + 2);
        c.push(prep_l(eta, a.rho()))?;
        c.push(o_f(a))?;
        c.push(flag_rotation(a, target, |v| {
            let r = (v.abs() / norm).sqrt();
            if signed && v < 0.0 {
                -r
            } else {
                r
            }
        }))?;
        Ok(c)
    };
    let mut u = t(f1, true)?;
    u.push(register_swap(0, eta))?;
    u.extend(&t(f2, false)?.adjoint())?;
    let zeta = a.rho() as f64 * norm;
    BlockEncoding::new("dsparse-standard", u, eta, zeta, a.to_dense())
}

/// One flag: `R_A` writes `A_jk/‖A‖` directly as the `|0⟩` amplitude, and the
/// row/column preparation is uncomputed with the registers exchanged.
pub fn dsparse_fused(a: &SparseOracle) -> Result<BlockEncoding, BlockEncodingError> {
    let norm = check(a)?;
    let eta = a.eta();
    let mut u = Circuit::new(2 * eta + 1);
    let prep = prep_l(eta, a.rho());
    let of = o_f(a);
    u.push(prep.clone())?;
    u.push(of.clone())?;
    u.push(flag_rotation(a, 2 * eta, |v| v / norm))?;
    u.push(register_swap(0, eta))?;
    let mut tail = Circuit::new(2 * eta + 1);
    tail.push(prep)?;
    tail.push(of)?;
    u.extend(&tail.adjoint())?;
    let zeta = a.rho() as f64 * norm;
    BlockEncoding::new("dsparse-fused", u, eta, zeta, a.to_dense())
}

/// Diagonal `A` with a single flag rotated by `A_jj / ‖A‖`; `ζ = ‖A‖max`.
pub fn diagonal_fused(diag: &[f64]) -> Result<BlockEncoding, BlockEncodingError> {
    let norm = diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if diag.is_empty() || norm == 0.0 || !norm.is_finite() {
        return Err(BlockEncodingError::Degenerate);
    }
    let eta = diag.len().next_power_of_two().trailing_zeros().max(1);
    let dim = 1usize << eta;
    let blocks = (0..dim)
        .map(|j| {
            let c = diag.get(j).copied().unwrap_or(0.0) / norm;
            let s = (1.0 - c * c).max(0.0).sqrt();
            [c, -s, s, c]
        })
        .collect();
    let mut u = Circuit::new(eta + 1);
    u.push(Factor::rotation(eta, &(0..eta).collect::<Vec<_>>(), blocks))?;
    let mut op = DMatrix::zeros(dim, dim);
    for (j, &v) in diag.iter().enumerate() {
        op[(j, j)] = v;
    }
    BlockEncoding::new("diagonal-fused", u, eta, norm, op)
}
