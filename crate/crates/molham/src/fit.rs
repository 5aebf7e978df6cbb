use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::MolhamError;

/// One resource measurement: address width, target error, Toffoli count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSample {
    pub eta: f64,
    pub epsilon: f64,
    pub tau: f64,
}

/// `log2 τ ≈ c1 η + c2 log2 log2(1/ε) + c3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingFit {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub r2: f64,
    pub samples: usize,
}

impl ScalingFit {
    pub fn predict(&self, eta: f64, epsilon: f64) -> f64 {
        2f64.powf(self.c1 * eta + self.c2 * (1.0 / epsilon).log2().log2() + self.c3)
    }
}

/// Least-squares fit of `log2 τ` against `(η, log2 log2(1/ε), 1)`.
pub fn fit_scaling(samples: &[ScalingSample]) -> Result<ScalingFit, MolhamError> {
    if samples.len() < 3 {
        return Err(MolhamError::Fit(format!("need at least 3 samples, got {}", samples.len())));
    }
    for (i, s) in samples.iter().enumerate() {
        if !(s.epsilon > 0.0 && s.epsilon < 0.5) {
            return Err(MolhamError::Fit(format!("sample {i}: epsilon {} outside (0, 1/2)", s.epsilon)));
        }
        if !(s.tau > 0.0) || !s.tau.is_finite() || !s.eta.is_finite() {
            return Err(MolhamError::Fit(format!("sample {i}: tau must be positive and finite")));
        }
    }
    let distinct = |f: &dyn Fn(&ScalingSample) -> f64| {
        let first = f(&samples[0]);
        samples.iter().any(|s| f(s) != first)
    };
    if !distinct(&|s| s.eta) || !distinct(&|s| s.epsilon) {
        return Err(MolhamError::Fit("samples must span at least two eta and two epsilon values".into()));
    }
    let n = samples.len();
    let x = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => samples[i].eta,
        1 => (1.0 / samples[i].epsilon).log2().log2(),
        _ => 1.0,
    });
    let y = DVector::from_iterator(n, samples.iter().map(|s| s.tau.log2()));
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 1e-10 * smax {
        return Err(MolhamError::Fit("design matrix is rank deficient".into()));
    }
    let c = svd
        .solve(&y, 1e-12 * smax)
        .map_err(|e| MolhamError::Fit(e.to_string()))?;
    let resid = &y - &x * &c;
    let mean = y.mean();
    let ss_tot: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let ss_res = resid.norm_squared();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(ScalingFit { c1: c[0], c2: c[1], c3: c[2], r2, samples: n })
}
