use nalgebra::DMatrix;

use crate::circuit::{state_preparation, Circuit, Condition, Factor};
use crate::encoding::BlockEncoding;
use crate::BlockEncodingError;

/// Tolerance on `H = H_eff + S H_eff S`.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Qubit map for a part: system unchanged, its ancillas moved to the shared pool at `η`.
fn part_map(part: &BlockEncoding) -> Vec<u32> {
    (0..part.circuit.qubits()).collect()
}

/// `Σ_k |k⟩⟨k| ⊗ B[A_k]` between `|G⟩ = Σ √(ζ_k/ζ) |k⟩` preparations.
/// Part counts that are not powers of two are padded with zero-weight identities.
pub fn lcu_sum(parts: &[BlockEncoding]) -> Result<BlockEncoding, BlockEncodingError> {
    let first = parts.first().ok_or(BlockEncodingError::Empty)?;
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    let eta = first.system_qubits;
    if parts.iter().any(|p| p.system_qubits != eta) {
        return Err(BlockEncodingError::Shape("parts act on different system sizes".into()));
    }
    let pool = parts.iter().map(|p| p.ancilla_qubits).max().unwrap_or(0);
    let k = parts.len().next_power_of_two();
    let p = k.trailing_zeros();
    let total = eta + pool + p;
    let zeta: f64 = parts.iter().map(|x| x.zeta).sum();
    let mut g = vec![0.0; k];
    for (i, part) in parts.iter().enumerate() {
        g[i] = (part.zeta / zeta).sqrt();
    }
    let prep_qubits: Vec<u32> = (eta + pool..total).collect();
    let prep = Factor::dense(prep_qubits.clone(), state_preparation(&g));
    let mut u = Circuit::new(total);
    u.push(prep.clone())?;
    for (i, part) in parts.iter().enumerate() {
        let when = Condition::register(&prep_qubits, i as u64);
        u.extend(&part.circuit.embed(&part_map(part), total, when)?)?;
    }
    let mut closing = Circuit::new(total);
    closing.push(prep)?;
    u.extend(&closing.adjoint())?;
    let op = parts.iter().fold(DMatrix::zeros(1 << eta, 1 << eta), |acc, x| acc + &x.operator);
    BlockEncoding::new("lcu-sum", u, eta, zeta, op)
}

/// `B[L] · C_aX · B[R]` on a shared ancilla pool plus one flag; `ζ = ζ_L ζ_R`.
/// The flag records whether `B[R]` left the pool outside `|0⟩`.
pub fn product_be(left: &BlockEncoding, right: &BlockEncoding) -> Result<BlockEncoding, BlockEncodingError> {
    if left.system_qubits != right.system_qubits {
        return Err(BlockEncodingError::Shape(format!(
            "system sizes {} and {} differ",
            left.system_qubits, right.system_qubits
        )));
    }
    let eta = left.system_qubits;
    let pool = left.ancilla_qubits.max(right.ancilla_qubits);
    let flag = eta + pool;
    let total = flag + 1;
    let mut u = Circuit::new(total);
    u.extend(&right.circuit.embed(&part_map(right), total, Condition::always())?)?;
    let mut qubits: Vec<u32> = (eta..eta + pool).collect();
    qubits.push(flag);
    let perm = (0..1u32 << (pool + 1))
        .map(|l| if l & ((1 << pool) - 1) != 0 { l ^ (1 << pool) } else { l })
        .collect();
    u.push(Factor::perm(qubits, perm))?;
    u.extend(&left.circuit.embed(&part_map(left), total, Condition::always())?)?;
    let op = &left.operator * &right.operator;
    BlockEncoding::new("product", u, eta, left.zeta * right.zeta, op)
}

/// The permutation matrix exchanging each qubit pair of the system register.
pub fn swap_matrix(eta: u32, pairs: &[(u32, u32)]) -> DMatrix<f64> {
    let n = 1usize << eta;
    let mut s = DMatrix::zeros(n, n);
    for u in 0..n {
        let mut v = u;
        for &(a, b) in pairs {
            let (ba, bb) = ((u >> a) & 1, (u >> b) & 1);
            v = (v & !(1 << a) & !(1 << b)) | (bb << a) | (ba << b);
        }
        s[(v, u)] = 1.0;
    }
    s
}

/// `(H ⊗ I) CSWAP B[H_eff] CSWAP (H ⊗ I)` with one control qubit, encoding
/// `H = H_eff + S H_eff S` at `ζ = 2 ζ_eff`.
pub fn symmetry_swap_reduction(
    h_eff: &BlockEncoding,
    pairs: &[(u32, u32)],
    h_full: &DMatrix<f64>,
) -> Result<BlockEncoding, BlockEncodingError> {
    let eta = h_eff.system_qubits;
    let mut seen = 0u64;
    for &(a, b) in pairs {
        let m = (1u64 << a) | (1u64 << b);
        if a == b || a >= eta || b >= eta || seen & m != 0 {
            return Err(BlockEncodingError::Shape(format!("swap pair ({a}, {b}) invalid")));
        }
        seen |= m;
    }
    if h_full.nrows() != h_eff.dim() || h_full.ncols() != h_eff.dim() {
        return Err(BlockEncodingError::Shape("full operator has the wrong size".into()));
    }
    let s = swap_matrix(eta, pairs);
    let sym = &h_eff.operator + &s * &h_eff.operator * &s;
    let violation = (&sym - h_full).amax();
    if violation > SYMMETRY_TOL {
        return Err(BlockEncodingError::Symmetry(violation));
    }
    let c = eta + h_eff.ancilla_qubits;
    let total = c + 1;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let had = Factor::dense(vec![c], DMatrix::from_row_slice(2, 2, &[h, h, h, -h]));
    let mut qubits: Vec<u32> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    qubits.push(c);
    let k = pairs.len() as u32;
    let cswap_perm = (0..1u32 << (2 * k + 1))
        .map(|l| {
            if l >> (2 * k) & 1 == 0 {
                return l;
            }
            (0..k).fold(l, |acc, i| {
                let (x, y) = ((l >> (2 * i)) & 1, (l >> (2 * i + 1)) & 1);
                (acc & !(3 << (2 * i))) | (y << (2 * i)) | (x << (2 * i + 1))
            })
        })
        .collect();
    let cswap = Factor::perm(qubits, cswap_perm);
    let mut u = Circuit::new(total);
    u.push(had.clone())?;
    u.push(cswap.clone())?;
    u.extend(&h_eff.circuit.embed(&part_map(h_eff), total, Condition::always())?)?;
    u.push(cswap)?;
    u.push(had)?;
    BlockEncoding::new("symmetry-swap", u, eta, 2.0 * h_eff.zeta, h_full.clone())
}
