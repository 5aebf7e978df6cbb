//! Synthetic potential surfaces on `[-1, 1)^D`, sampled on `2^η` grid points.
//!
//! The `η` address bits are split across the `D` coordinates as evenly as
//! possible (leading coordinates take the remainder), and coordinate `i`
//! reads its own contiguous block of bits, low coordinates in low bits.

use serde::{Deserialize, Serialize};

/// Morse range parameter.
const MORSE_A: f64 = 1.5;
/// Morse minimum position.
const MORSE_SHIFT: f64 = -0.3;
/// Gaussian well depth, width and centre offset.
const WELL_DEPTH: f64 = 1.0;
const WELL_SIGMA: f64 = 0.35;
const WELL_CENTRE: f64 = 0.4;
/// Bilinear coupling between every pair of coordinates.
const WELL_COUPLING: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SyntheticPes {
    /// `½ Σ u_i²`.
    SeparableHarmonic,
    /// `Σ (1 - exp(-a (u_i - s)))²` with `a = 1.5`, `s = -0.3`.
    MorseSum,
    /// Two Gaussian wells at `±0.4 (1, …, 1)` plus `0.1 Σ_{i<j} u_i u_j`.
    CoupledGaussianWells,
}

impl std::str::FromStr for SyntheticPes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "harmonic" | "separable-harmonic" => Ok(Self::SeparableHarmonic),
            "morse" | "morse-sum" => Ok(Self::MorseSum),
            "wells" | "coupled-gaussian-wells" => Ok(Self::CoupledGaussianWells),
            _ => Err(format!("unknown surface `{s}`")),
        }
    }
}

impl SyntheticPes {
    pub fn eval(&self, u: &[f64]) -> f64 {
        match self {
            Self::SeparableHarmonic => 0.5 * u.iter().map(|v| v * v).sum::<f64>(),
            Self::MorseSum => u
                .iter()
                .map(|&v| {
                    let e = 1.0 - (-MORSE_A * (v - MORSE_SHIFT)).exp();
                    e * e
                })
                .sum(),
            Self::CoupledGaussianWells => {
                let well = |sign: f64| {
                    let r2: f64 = u.iter().map(|&v| (v - sign * WELL_CENTRE).powi(2)).sum();
                    -WELL_DEPTH * (-r2 / (2.0 * WELL_SIGMA * WELL_SIGMA)).exp()
                };
                let mut coupling = 0.0;
                for i in 0..u.len() {
                    for j in i + 1..u.len() {
                        coupling += u[i] * u[j];
                    }
                }
                well(1.0) + well(-1.0) + WELL_COUPLING * coupling
            }
        }
    }

    /// Upper bound on `‖∇V‖₂` over `[-1, 1]^D`.
    pub fn gradient_bound(&self, dims: u32) -> f64 {
        let dn = dims as f64;
        match self {
            Self::SeparableHarmonic => dn.sqrt(),
            Self::MorseSum => {
                // d/du (1-E)² = 2a(1-E)E with E = exp(-a(u-s)); |(1-E)E| peaks at an endpoint or E = ½.
                let e_lo = (-MORSE_A * (1.0 - MORSE_SHIFT)).exp();
                let e_hi = (-MORSE_A * (-1.0 - MORSE_SHIFT)).exp();
                let h = |e: f64| ((1.0 - e) * e).abs();
                let mut m = h(e_lo).max(h(e_hi));
                if (e_lo..=e_hi).contains(&0.5) {
                    m = m.max(0.25);
                }
                2.0 * MORSE_A * m * dn.sqrt()
            }
            Self::CoupledGaussianWells => {
                let gauss = 2.0 * WELL_DEPTH / WELL_SIGMA * (-0.5f64).exp();
                gauss + WELL_COUPLING * (dn - 1.0) * dn.sqrt()
            }
        }
    }

    /// Raw values on the `2^η` grid.
    pub fn sample(&self, eta: u32, dims: u32) -> Vec<f64> {
        let bits = split_bits(eta, dims);
        (0..1u64 << eta).map(|x| self.eval(&grid_point(x, &bits))).collect()
    }
}

/// Bits per coordinate; leading coordinates absorb the remainder.
pub fn split_bits(eta: u32, dims: u32) -> Vec<u32> {
    assert!(dims >= 1, "at least one coordinate");
    (0..dims)
        .map(|i| eta / dims + u32::from(i < eta % dims))
        .collect()
}

/// Cell midpoints in `[-1, 1)` for grid index `x`.
pub fn grid_point(x: u64, bits: &[u32]) -> Vec<f64> {
    let mut shift = 0;
    bits.iter()
        .map(|&nb| {
            let j = (x >> shift) & ((1u64 << nb) - 1);
            shift += nb;
            -1.0 + 2.0 * (j as f64 + 0.5) / (1u64 << nb) as f64
        })
        .collect()
}

/// Scales values into `[-1, 1)` for a `d`-bit quantizer: the largest
/// magnitude maps to `1 - 2^(1-d)`.
pub fn normalize_raw(v: &[f64], d: u32) -> Vec<f64> {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if m == 0.0 {
        return vec![0.0; v.len()];
    }
    let top = 1.0 - 2f64.powi(1 - d as i32);
    v.iter().map(|x| x / m * top).collect()
}

/// Rotation angles `arccos(V / N)` with `N = 2 ‖V‖∞`, recentred as
/// `2 arccos(V/N)/π - 1 ∈ [-1/3, 1/3]` (the dropped offset is a fixed half turn).
pub fn arccos_angles(v: &[f64]) -> Vec<f64> {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let n = 2.0 * m;
    v.iter()
        .map(|&x| {
            let u = if n == 0.0 { 0.0 } else { x / n };
            2.0 * u.acos() / std::f64::consts::PI - 1.0
        })
        .collect()
}
