use nalgebra::DMatrix;
use qrom::{simulate, synthesize, Ordering, QromCircuit};
use wht::{wht_forward, SampledFunction, TruncatedSpectrum};

use crate::circuit::{state_preparation, Circuit, Condition, Factor};
use crate::encoding::BlockEncoding;
use crate::BlockEncodingError;

/// Largest `η + b + ⌈log2(d+1)⌉` handled here.
pub const DIAG_QUBIT_LIMIT: u32 = 20;

/// The WH-QROM writing `D_x` (read as a signed `d`-bit word) into the top
/// `d` payload bits.
pub fn diagonal_qrom(values: &[u64], d: u32) -> Result<QromCircuit, BlockEncodingError> {
    check_values(values, d)?;
    let signed = values
        .iter()
        .map(|&v| if v >= 1 << (d - 1) { v as i64 - (1i64 << d) } else { v as i64 })
        .collect();
    let f = SampledFunction::new(d, signed).map_err(|e| BlockEncodingError::Shape(e.to_string()))?;
    Ok(synthesize(&TruncatedSpectrum::full(wht_forward(&f)), Ordering::GrayCode))
}

fn check_values(values: &[u64], d: u32) -> Result<(), BlockEncodingError> {
    if d == 0 || d > 30 {
        return Err(BlockEncodingError::Shape(format!("word width {d}")));
    }
    if values.len() < 2 || !values.len().is_power_of_two() {
        return Err(BlockEncodingError::Shape(format!("{} diagonal entries", values.len())));
    }
    if let Some((i, &v)) = values.iter().enumerate().find(|&(_, &v)| v >> d != 0) {
        return Err(BlockEncodingError::Range { index: i, value: v, d });
    }
    Ok(())
}

/// `O_D† (I ⊗ B[A]) O_D` with `A = ½((2^d - 1) I - Σ_a 2^{d-a-1} Z_a)`, so that
/// `A|D⟩ = D|D⟩` on a `d`-bit word whose qubit `a = 0` is the most significant.
/// `B[A]` is an LCU over `I` and the `-Z_a`; `ζ = 2^d - 1`.
pub fn diag_no_rotation(values: &[u64], d: u32, qrom: &QromCircuit) -> Result<BlockEncoding, BlockEncodingError> {
    check_values(values, d)?;
    let eta = values.len().trailing_zeros();
    let b = qrom.payload_width();
    if qrom.eta() != eta || b != eta + d {
        return Err(BlockEncodingError::Shape(format!(
            "QROM registers ({}, {b}) do not fit η = {eta}, d = {d}",
            qrom.eta()
        )));
    }
    let terms = d as usize + 1;
    let p = (terms.next_power_of_two().trailing_zeros()).max(1);
    let total = eta + b + p;
    if total > DIAG_QUBIT_LIMIT {
        return Err(BlockEncodingError::TooLarge(total));
    }
    let low = eta + b;
    let mut perm = vec![0u32; 1 << low];
    for x in 0..1u64 << eta {
        let got = simulate(qrom, x, 0).map_err(|e| BlockEncodingError::Shape(e.to_string()))?;
        if got != values[x as usize] << eta {
            return Err(BlockEncodingError::QromMismatch { x, expected: values[x as usize], found: got });
        }
        for y in 0..1u64 << b {
            let out = simulate(qrom, x, y).map_err(|e| BlockEncodingError::Shape(e.to_string()))?;
            perm[(x | y << eta) as usize] = (x | out << eta) as u32;
        }
    }
    let o_d = Factor::perm((0..low).collect(), perm);

    let zeta = ((1u64 << d) - 1) as f64;
    let mut weights = vec![0.0; 1 << p];
    weights[0] = zeta / 2.0;
    for a in 0..d {
        weights[a as usize + 1] = (1u64 << (d - a - 1)) as f64 / 2.0;
    }
    let g: Vec<f64> = weights.iter().map(|w| (w / zeta).sqrt()).collect();
    let prep_qubits: Vec<u32> = (low..low + p).collect();
    let prep = Factor::dense(prep_qubits.clone(), state_preparation(&g));

    let mut u = Circuit::new(total);
    u.push(o_d.clone())?;
    u.push(prep.clone())?;
    for a in 0..d {
        // -Z on data qubit a: |0⟩ ↦ -|0⟩, |1⟩ ↦ |1⟩.
        let q = eta + b - 1 - a;
        let sel = Factor::signed_perm(vec![q], vec![0, 1], vec![-1.0, 1.0])
            .when(Condition::register(&prep_qubits, a as u64 + 1));
        u.push(sel)?;
    }
    let mut tail = Circuit::new(total);
    tail.push(o_d)?;
    tail.push(prep)?;
    u.extend(&tail.adjoint())?;

    let n = values.len();
    let mut op = DMatrix::zeros(n, n);
    for (x, &v) in values.iter().enumerate() {
        op[(x, x)] = v as f64;
    }
    BlockEncoding::new("diag-no-rotation", u, eta, zeta, op)
}
