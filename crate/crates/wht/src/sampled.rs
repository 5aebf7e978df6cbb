use crate::error::{Result, WhtError};

/// Largest admissible `η + d`; keeps every intermediate inside `i64`.
pub const MAX_TOTAL_BITS: u32 = 62;

/// Signed `d`-bit samples of a function on `F_2^η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledFunction {
    eta: u32,
    d: u32,
    values: Vec<i64>,
}

impl SampledFunction {
    /// Checks length `2^η`, the `d`-bit signed range, and `η + d ≤ 62`.
    pub fn new(d: u32, values: Vec<i64>) -> Result<Self> {
        if d == 0 {
            return Err(WhtError::ZeroWidth);
        }
        let eta = log2_exact(values.len())?;
        if eta + d > MAX_TOTAL_BITS {
            return Err(WhtError::Width(eta + d));
        }
        let half = 1i64 << (d - 1);
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v < -half || v >= half)
        {
            return Err(WhtError::ValueRange { index, value, d });
        }
        Ok(Self { eta, d, values })
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Payload width `b = η + d` of the spectrum and of the QROM register.
    pub fn b(&self) -> u32 {
        self.eta + self.d
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `|f(x)|`.
    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

pub(crate) fn log2_exact(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(WhtError::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros())
}

/// Fixed-point quantization `f(x) = ⌊2^(d-1) θ(x)⌋` of samples in `[-1, 1)`.
pub fn quantize(theta: &[f64], d: u32) -> Result<SampledFunction> {
    if d == 0 {
        return Err(WhtError::ZeroWidth);
    }
    log2_exact(theta.len())?;
    if d > MAX_TOTAL_BITS {
        return Err(WhtError::Width(d));
    }
    let scale = (1u64 << (d - 1)) as f64;
    let values = theta
        .iter()
        .enumerate()
        .map(|(index, &t)| {
            if !(-1.0..1.0).contains(&t) {
                return Err(WhtError::SampleRange { index, value: t });
            }
            // Rounding of the product can push it to 2^(d-1); clamp keeps the range invariant.
            let v = (scale * t).floor() as i64;
            Ok(v.min(scale as i64 - 1))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(d, values)
}
