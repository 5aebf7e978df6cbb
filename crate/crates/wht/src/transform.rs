use crate::error::{Result, WhtError};
use crate::sampled::{log2_exact, SampledFunction, MAX_TOTAL_BITS};

/// Exact integer Walsh-Hadamard spectrum, indexed by mask `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    eta: u32,
    b: u32,
    coeffs: Vec<i64>,
}

impl WalshSpectrum {
    /// Wraps raw coefficients; every one must fit in `b` signed bits.
    pub fn from_coeffs(b: u32, coeffs: Vec<i64>) -> Result<Self> {
        let eta = log2_exact(coeffs.len())?;
        if b == 0 {
            return Err(WhtError::ZeroWidth);
        }
        if b > MAX_TOTAL_BITS {
            return Err(WhtError::Width(b));
        }
        let lim = 1i64 << (b - 1);
        if let Some((index, &value)) = coeffs
            .iter()
            .enumerate()
            .find(|(_, &c)| c < -lim || c > lim)
        {
            return Err(WhtError::ValueRange { index, value, d: b });
        }
        Ok(Self { eta, b, coeffs })
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

/// In-place unnormalized butterfly; applying it twice multiplies by `len`.
pub fn fwht_in_place(data: &mut [i64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < n {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h <<= 1;
    }
}

/// `coeffs[z] = Σ_x (-1)^(x·z) f(x)`.
pub fn wht_forward(f: &SampledFunction) -> WalshSpectrum {
    let mut coeffs = f.values().to_vec();
    fwht_in_place(&mut coeffs);
    WalshSpectrum {
        eta: f.eta(),
        b: f.b(),
        coeffs,
    }
}

/// A rational `num / 2^log_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    pub num: i128,
    pub log_den: u32,
}

impl Dyadic {
    pub fn new(num: i128, log_den: u32) -> Self {
        Self { num, log_den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (1u128 << self.log_den) as f64
    }

    /// The integer value when the denominator divides the numerator.
    pub fn as_integer(self) -> Option<i128> {
        let den = 1i128 << self.log_den;
        (self.num % den == 0).then(|| self.num / den)
    }
}

/// `g(x) = 2^(-η) Σ_z (-1)^(x·z) coeffs[z]`, returned exactly.
pub fn wht_inverse(s: &WalshSpectrum) -> Vec<Dyadic> {
    let mut acc: Vec<i128> = s.coeffs.iter().map(|&c| c as i128).collect();
    let n = acc.len();
    let mut h = 1;
    while h < n {
        for block in acc.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        h <<= 1;
    }
    acc.into_iter().map(|num| Dyadic::new(num, s.eta)).collect()
}
