use serde::{Deserialize, Serialize};

use crate::MolhamError;

/// Largest `D · m′` handled densely.
pub const MAX_TOTAL_BITS: u32 = 14;

/// Result of comparing a fine and a coarse diagonal phase unitary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscretizationCheck {
    /// `‖U_{Θ,m′} − U_{Θ,m} ⊗ I‖`.
    pub measured: f64,
    /// `√2 π K √(Σ_a 4^{-m})`.
    pub bound: f64,
    /// `2 π K √(Σ_a 4^{-m})`, the bound the Lipschitz argument supports.
    pub proven_bound: f64,
    pub holds: bool,
    pub holds_proven: bool,
}

/// Fixed-point value of an `m`-bit word, MSB first: `-x_0 + Σ_{a≥1} x_a 2^{-a}`.
pub fn fixed_point(word: u64, m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let msb = (word >> (m - 1)) & 1;
    let rest = word & ((1u64 << (m - 1)) - 1);
    -(msb as f64) + rest as f64 / (1u64 << (m - 1)) as f64
}

/// `ε(n̄) = √2 π K √(Σ_a 4^{-n_a})` for `n_a = m` bits on each of `D` coordinates.
pub fn stated_bound(dims: usize, grad_bound: f64, m: u32) -> f64 {
    std::f64::consts::SQRT_2 * std::f64::consts::PI * grad_bound * (dims as f64 * 4f64.powi(-(m as i32))).sqrt()
}

/// `2 π K √(Σ_a 4^{-m})`.
pub fn proven_bound(dims: usize, grad_bound: f64, m: u32) -> f64 {
    2.0 * std::f64::consts::PI * grad_bound * (dims as f64 * 4f64.powi(-(m as i32))).sqrt()
}

/// `m_ε = ⌈log2(√D ‖∇Θ‖∞ / (2πε))⌉`.
pub fn m_epsilon(dims: usize, grad_bound: f64, epsilon: f64) -> Result<i64, MolhamError> {
    if !(epsilon > 0.0) || !(grad_bound > 0.0) || dims == 0 {
        return Err(MolhamError::Argument("need D ≥ 1, K > 0 and epsilon > 0".into()));
    }
    let x = (dims as f64).sqrt() * grad_bound / (2.0 * std::f64::consts::PI * epsilon);
    let l = x.log2();
    let r = l.round();
    Ok(if (l - r).abs() < 1e-9 { r as i64 } else { l.ceil() as i64 })
}

/// Builds `U_{Θ,m′}` and `U_{Θ,m} ⊗ I` on `D · m′` qubits (phase `e^{iπΘ}`) and
/// measures their operator-norm distance, `max_x 2|sin(π ΔΘ(x) / 2)|`.
///
/// The coarse point keeps the top `m` bits of each fine coordinate.
pub fn discretization_bound_check(
    theta: impl Fn(&[f64]) -> f64,
    dims: usize,
    grad_bound: f64,
    m: u32,
    m_fine: u32,
) -> Result<DiscretizationCheck, MolhamError> {
    if dims == 0 || m == 0 || m > m_fine {
        return Err(MolhamError::Argument(format!("need D ≥ 1 and 1 ≤ m ≤ m′, got D={dims}, m={m}, m′={m_fine}")));
    }
    let total = dims as u32 * m_fine;
    if total > MAX_TOTAL_BITS {
        return Err(MolhamError::Argument(format!("D·m′ = {total} exceeds {MAX_TOTAL_BITS}")));
    }
    let mask = (1u64 << m_fine) - 1;
    let mut fine = vec![0.0; dims];
    let mut coarse = vec![0.0; dims];
    let mut measured = 0.0f64;
    for x in 0..1u64 << total {
        for a in 0..dims {
            let w = (x >> (a as u32 * m_fine)) & mask;
            fine[a] = fixed_point(w, m_fine);
            coarse[a] = fixed_point(w >> (m_fine - m), m);
        }
        let dt = theta(&fine) - theta(&coarse);
        measured = measured.max(2.0 * (std::f64::consts::FRAC_PI_2 * dt).sin().abs());
    }
    let bound = stated_bound(dims, grad_bound, m);
    let proven = proven_bound(dims, grad_bound, m);
    Ok(DiscretizationCheck {
        measured,
        bound,
        proven_bound: proven,
        holds: measured <= bound,
        holds_proven: measured <= proven * (1.0 + 1e-12),
    })
}
