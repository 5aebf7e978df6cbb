//! Fixed-point sampled functions on `F_2^η` and their exact integer
//! Walsh-Hadamard spectra.
//!
//! A [`SampledFunction`] holds `2^η` signed `d`-bit integers. Its spectrum
//! ([`WalshSpectrum`]) is computed with an in-place integer butterfly, and
//! [`minimal_truncation`] finds the fewest retained coefficients whose
//! reconstruction stays within a diagonal-unitary error budget.

mod error;
mod io;
mod sampled;
mod transform;
mod truncate;

pub use error::{Result, WhtError};
pub use io::{read_samples, read_samples_binary, read_samples_csv};
pub use sampled::{quantize, SampledFunction, MAX_TOTAL_BITS};
pub use transform::{fwht_in_place, wht_forward, wht_inverse, Dyadic, WalshSpectrum};
pub use truncate::{
    diag_error, diag_error_real, minimal_truncation, truncation_curve, TruncatedSpectrum,
};

/// Parity of the bitwise inner product `x · z` over `F_2`.
#[inline]
pub fn parity(x: u64, z: u64) -> bool {
    (x & z).count_ones() & 1 == 1
}

/// Index of the least significant set bit of `k`, or `None` for zero.
#[inline]
pub fn lsb(k: i128) -> Option<u32> {
    (k != 0).then(|| k.trailing_zeros())
}
