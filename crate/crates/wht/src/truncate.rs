use std::f64::consts::TAU;

use crate::error::{Result, WhtError};
use crate::parity;
use crate::sampled::SampledFunction;
use crate::transform::{wht_forward, Dyadic, WalshSpectrum};

/// A spectrum restricted to its `k` largest-magnitude coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSpectrum {
    base: WalshSpectrum,
    support: Vec<u64>,
}

impl TruncatedSpectrum {
    /// Keeps the `k` largest `|coeffs|`; equal magnitudes favour the smaller mask.
    pub fn top_k(base: WalshSpectrum, k: usize) -> Self {
        let mut support: Vec<u64> = selection_order(&base).into_iter().take(k).collect();
        support.sort_unstable();
        Self { base, support }
    }

    /// Keeps every coefficient.
    pub fn full(base: WalshSpectrum) -> Self {
        let k = base.len();
        Self::top_k(base, k)
    }

    pub fn base(&self) -> &WalshSpectrum {
        &self.base
    }

    pub fn eta(&self) -> u32 {
        self.base.eta()
    }

    pub fn b(&self) -> u32 {
        self.base.b()
    }

    /// Retained masks in ascending order.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn k(&self) -> usize {
        self.support.len()
    }

    /// Retained `(mask, coefficient)` pairs with nonzero coefficient, ascending by mask.
    pub fn terms(&self) -> Vec<(u64, i64)> {
        self.support
            .iter()
            .map(|&z| (z, self.base.coeffs()[z as usize]))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Full-length coefficient vector with dropped entries zeroed.
    pub fn coeffs(&self) -> Vec<i64> {
        let mut out = vec![0; self.base.len()];
        for &z in &self.support {
            out[z as usize] = self.base.coeffs()[z as usize];
        }
        out
    }

    /// The reconstruction `g`, exact with denominator `2^η`.
    pub fn reconstruct(&self) -> Vec<Dyadic> {
        let s = WalshSpectrum::from_coeffs(self.b(), self.coeffs())
            .expect("subset of a valid spectrum");
        crate::transform::wht_inverse(&s)
    }
}

/// Masks ordered by descending magnitude, ascending mask on ties.
fn selection_order(s: &WalshSpectrum) -> Vec<u64> {
    let mut order: Vec<u64> = (0..s.len() as u64).collect();
    order.sort_by_key(|&z| (std::cmp::Reverse(s.coeffs()[z as usize].unsigned_abs()), z));
    order
}

/// `2 max_x |sin(2π (f(x) - g(x)) / 2^d)|`, evaluated exactly modulo `2^d`.
pub fn diag_error(f: &SampledFunction, g: &[Dyadic], d: u32) -> Result<f64> {
    if g.len() != f.len() {
        return Err(WhtError::LengthMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    Ok(f
        .values()
        .iter()
        .zip(g)
        .map(|(&fv, gv)| phase_distance(((fv as i128) << gv.log_den) - gv.num, gv.log_den + d))
        .fold(0.0, f64::max))
}

/// Same metric on arbitrary real sequences.
pub fn diag_error_real(f: &[f64], g: &[f64], d: u32) -> Result<f64> {
    if f.len() != g.len() {
        return Err(WhtError::LengthMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    let scale = TAU / 2f64.powi(d as i32);
    Ok(f.iter()
        .zip(g)
        .map(|(a, b)| 2.0 * (scale * (a - b)).sin().abs())
        .fold(0.0, f64::max))
}

/// `2 |sin(2π m / 2^bits)|` with `m` reduced exactly first.
#[inline]
fn phase_distance(m: i128, bits: u32) -> f64 {
    let modulus = 1i128 << bits;
    let r = m.rem_euclid(modulus);
    2.0 * (TAU * (r as f64 / modulus as f64)).sin().abs()
}

/// Smallest `k` (linear scan from zero) whose top-`k` reconstruction has
/// `diag_error < epsilon`.
pub fn minimal_truncation(f: &SampledFunction, epsilon: f64) -> TruncatedSpectrum {
    let spectrum = wht_forward(f);
    let order = selection_order(&spectrum);
    let eta = f.eta();
    let bits = eta + f.d();
    let target: Vec<i128> = f.values().iter().map(|&v| (v as i128) << eta).collect();
    let mut num = vec![0i128; f.len()];

    let within = |num: &[i128]| {
        target
            .iter()
            .zip(num)
            .all(|(&t, &g)| phase_distance(t - g, bits) < epsilon)
    };

    let mut k = 0;
    while !within(&num) {
        let z = order[k];
        add_character(&mut num, z, spectrum.coeffs()[z as usize]);
        k += 1;
    }
    TruncatedSpectrum::top_k(spectrum, k)
}

/// `(k, diag_error)` for every `k` from 0 up to the number of nonzero coefficients.
pub fn truncation_curve(f: &SampledFunction) -> Vec<(usize, f64)> {
    let spectrum = wht_forward(f);
    let order = selection_order(&spectrum);
    let eta = f.eta();
    let bits = eta + f.d();
    let target: Vec<i128> = f.values().iter().map(|&v| (v as i128) << eta).collect();
    let mut num = vec![0i128; f.len()];
    let err = |num: &[i128]| {
        target
            .iter()
            .zip(num)
            .map(|(&t, &g)| phase_distance(t - g, bits))
            .fold(0.0, f64::max)
    };
    let nnz = spectrum.support_size();
    let mut curve = Vec::with_capacity(nnz + 1);
    curve.push((0, err(&num)));
    for (i, &z) in order.iter().take(nnz).enumerate() {
        add_character(&mut num, z, spectrum.coeffs()[z as usize]);
        curve.push((i + 1, err(&num)));
    }
    curve
}

fn add_character(num: &mut [i128], z: u64, c: i64) {
    let c = c as i128;
    for (x, v) in num.iter_mut().enumerate() {
        if parity(x as u64, z) {
            *v -= c;
        } else {
            *v += c;
        }
    }
}
