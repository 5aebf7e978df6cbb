use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use wht::SampledFunction;

use crate::error::{QromError, Result};

/// Largest `η + 1 + d` accepted by the dense construction.
pub const DENSE_QUBIT_LIMIT: u32 = 14;

/// Both dense forms of the multiplexed rotation `R_f`.
#[derive(Debug, Clone)]
pub struct MultiplexedRotation {
    /// Block-diagonal `R_Y(2π f(x) / 2^d)` on the flag for each address `x`.
    pub direct: DMatrix<Complex64>,
    /// `(S†H ⊗ 1) D_F (HS ⊗ 1)` with `F(a, x) = (-1)^a f(x)`.
    pub composed: DMatrix<Complex64>,
}

impl MultiplexedRotation {
    /// Max-norm difference of the two constructions.
    pub fn discrepancy(&self) -> f64 {
        (&self.direct - &self.composed).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Flag qubit is the most significant: basis index `a · 2^η + x`.
pub fn multiplexed_rotation_unitary(f: &SampledFunction) -> Result<MultiplexedRotation> {
    let (eta, d) = (f.eta(), f.d());
    if eta + 1 + d > DENSE_QUBIT_LIMIT {
        return Err(QromError::Scale { qubits: eta + 1 + d, limit: DENSE_QUBIT_LIMIT });
    }
    let n = 1usize << eta;
    let dim = 2 * n;
    let zero = Complex64::new(0.0, 0.0);

    let mut direct = DMatrix::from_element(dim, dim, zero);
    for (x, &v) in f.values().iter().enumerate() {
        let half = 0.5 * TAU * v as f64 / (1u64 << d) as f64;
        let (s, c) = half.sin_cos();
        direct[(x, x)] = Complex64::new(c, 0.0);
        direct[(x, n + x)] = Complex64::new(-s, 0.0);
        direct[(n + x, x)] = Complex64::new(s, 0.0);
        direct[(n + x, n + x)] = Complex64::new(c, 0.0);
    }

    // F takes d + 1 signed bits; phase kickback at that precision gives exp(iπF/2^d).
    let phase = |a: usize, x: usize| {
        let fv = f.values()[x] as f64;
        let big_f = if a == 0 { fv } else { -fv };
        Complex64::from_polar(1.0, TAU * big_f / (1u64 << (d + 1)) as f64)
    };
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let hs = [[s, s * i], [s, -s * i]];
    let sdg_h = [[s, s], [-i * s, i * s]];
    let mut composed = DMatrix::from_element(dim, dim, zero);
    for x in 0..n {
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = zero;
                for m in 0..2 {
                    acc += sdg_h[r][m] * phase(m, x) * hs[m][c];
                }
                composed[(r * n + x, c * n + x)] = acc;
            }
        }
    }
    Ok(MultiplexedRotation { direct, composed })
}

/// `max |U†U - I|` over all entries.
pub fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    let p = u.adjoint() * u;
    let mut dev: f64 = 0.0;
    for r in 0..p.nrows() {
        for c in 0..p.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            dev = dev.max((p[(r, c)] - Complex64::new(target, 0.0)).norm());
        }
    }
    dev
}
