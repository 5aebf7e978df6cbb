use qrom::CostReport;
use serde::{Deserialize, Serialize};
use wht::SampledFunction;

use crate::BaselineError;

/// SELECT-SWAP parameters: `λ` words are swapped out per select step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectSwapModel {
    eta: u32,
    d: u32,
    lambda: u64,
}

impl SelectSwapModel {
    pub fn new(eta: u32, d: u32, lambda: u64) -> Result<Self, BaselineError> {
        if lambda == 0 || lambda > 1u64 << eta {
            return Err(BaselineError::Lambda { lambda, eta });
        }
        Ok(Self { eta, d, lambda })
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// `⌈2^η/λ⌉ + 2dλ`.
    pub fn toffoli(&self) -> u64 {
        (1u64 << self.eta).div_ceil(self.lambda) + 2 * self.d as u64 * self.lambda
    }

    /// `2η + λd`.
    pub fn qubits(&self) -> u64 {
        2 * self.eta as u64 + self.lambda * self.d as u64
    }

    /// `⌈2^η/λ + log2 λ⌉`.
    pub fn toffoli_depth(&self) -> u64 {
        let n = 1u64 << self.eta;
        let v = n as f64 / self.lambda as f64 + (self.lambda as f64).log2();
        // Guard against 4.000000001-style float noise when the sum is integral.
        let r = v.round();
        if (v - r).abs() < 1e-9 {
            r as u64
        } else {
            v.ceil() as u64
        }
    }
}

/// Sum of Hamming weights of the `d`-bit two's-complement words.
pub fn cnot_lower_bound(f: &SampledFunction) -> u64 {
    let mask = if f.d() >= 64 { u64::MAX } else { (1u64 << f.d()) - 1 };
    f.values()
        .iter()
        .map(|&v| ((v as u64) & mask).count_ones() as u64)
        .sum()
}

/// Cost model; `cnot_count` holds the data-loading lower bound.
pub fn selectswap_cost(m: &SelectSwapModel, f: &SampledFunction) -> CostReport {
    let cnot = cnot_lower_bound(f);
    CostReport::from_toffoli(m.toffoli(), cnot, cnot, m.qubits(), m.toffoli_depth())
}

/// Integer `λ ∈ [1, 2^η]` minimizing the Toffoli count; ties go to the smaller `λ`.
pub fn optimize_lambda(eta: u32, d: u32, f: &SampledFunction) -> (u64, CostReport) {
    best_over(eta, d, f, 1..=(1u64 << eta))
}

/// Same search restricted to powers of two.
pub fn optimize_lambda_pow2(eta: u32, d: u32, f: &SampledFunction) -> (u64, CostReport) {
    best_over(eta, d, f, (0..=eta).map(|e| 1u64 << e))
}

fn best_over(
    eta: u32,
    d: u32,
    f: &SampledFunction,
    lambdas: impl Iterator<Item = u64>,
) -> (u64, CostReport) {
    let lambda = lambdas
        .min_by_key(|&l| (SelectSwapModel { eta, d, lambda: l }.toffoli(), l))
        .expect("nonempty lambda range");
    let m = SelectSwapModel { eta, d, lambda };
    (lambda, selectswap_cost(&m, f))
}
