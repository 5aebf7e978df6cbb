//! Column recursion for `T`.
//!
//! Unscaled: `T_{q+2} = (A_q + B_q x) T_{q+1} + C_q T_q`, column-wise over
//! grid points `x`. The oracle works with `T'_q = γ_q T_q`, chosen so the
//! older column enters with unit weight. Columns are split into segments of
//! `F`; each segment is seeded with its two midpoint columns (`γ = 1`) and
//! grown upward and downward from there.

use nalgebra::DMatrix;

use crate::quadrature::QuadratureKind;
use crate::DvrError;

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCoeffs {
    pub n: usize,
    pub segment: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    /// `A'_q`, `B'_q` for every column not seeded directly (zero on seeds).
    pub a_scaled: Vec<f64>,
    pub b_scaled: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl RecursionCoeffs {
    pub fn new(kind: QuadratureKind, n: usize, segment: usize) -> Result<Self, DvrError> {
        check_segment(n, segment)?;
        // A_q, B_q, C_q are defined for q + 2 < n.
        let m = n.saturating_sub(2);
        let a: Vec<f64> = (0..m).map(|q| -kind.alpha(q + 1) / kind.beta(q + 2)).collect();
        let b: Vec<f64> = (0..m).map(|q| 1.0 / kind.beta(q + 2)).collect();
        let c: Vec<f64> = (0..m).map(|q| -kind.beta(q + 1) / kind.beta(q + 2)).collect();
        let mut gamma = vec![1.0; n];
        let mut a_scaled = vec![0.0; n];
        let mut b_scaled = vec![0.0; n];
        for w in 0..n / segment {
            let lo = w * segment;
            let hi = lo + segment;
            let mid = lo + segment / 2;
            for q in mid + 1..hi {
                gamma[q] = gamma[q - 2] / c[q - 2];
                let r = gamma[q] / gamma[q - 1];
                a_scaled[q] = r * a[q - 2];
                b_scaled[q] = r * b[q - 2];
            }
            for q in (lo..mid - 1).rev() {
                gamma[q] = c[q] * gamma[q + 2];
                let r = -gamma[q + 2] / gamma[q + 1];
                a_scaled[q] = r * a[q];
                b_scaled[q] = r * b[q];
            }
        }
        Ok(Self { n, segment, a, b, c, a_scaled, b_scaled, gamma })
    }

    /// The seeded column pairs `(mid - 1, mid)` of every segment.
    pub fn seed_columns(&self) -> Vec<(usize, usize)> {
        (0..self.n / self.segment)
            .map(|w| {
                let mid = w * self.segment + self.segment / 2;
                (mid - 1, mid)
            })
            .collect()
    }
}

fn check_segment(n: usize, f: usize) -> Result<(), DvrError> {
    if f < 2 || !f.is_power_of_two() || n % f != 0 {
        return Err(DvrError::Segment { n, f });
    }
    Ok(())
}

/// Copies the seed columns out of a full `T`.
pub fn init_columns(t: &DMatrix<f64>, coeffs: &RecursionCoeffs) -> Vec<(usize, Vec<f64>)> {
    coeffs
        .seed_columns()
        .into_iter()
        .flat_map(|(a, b)| [a, b])
        .map(|q| (q, t.column(q).iter().copied().collect()))
        .collect()
}

/// Rebuilds `T` from seed columns through the scaled recursion, then divides by `γ_q`.
pub fn recursion_columns(
    coeffs: &RecursionCoeffs,
    nodes: &[f64],
    init: &[(usize, Vec<f64>)],
) -> Result<DMatrix<f64>, DvrError> {
    let n = coeffs.n;
    if nodes.len() != n {
        return Err(DvrError::Dimension { expected: n, found: nodes.len() });
    }
    let mut tp = DMatrix::<f64>::zeros(n, n);
    let mut seeded = vec![false; n];
    for (q, col) in init {
        if *q >= n || col.len() != n {
            return Err(DvrError::Dimension { expected: n, found: col.len() });
        }
        tp.column_mut(*q).copy_from_slice(col);
        seeded[*q] = true;
    }
    for (lo, hi) in coeffs.seed_columns() {
        if !seeded[lo] || !seeded[hi] {
            return Err(DvrError::MissingSeed(lo));
        }
    }
    let f = coeffs.segment;
    for w in 0..n / f {
        let lo = w * f;
        let mid = lo + f / 2;
        for q in mid + 1..lo + f {
            for p in 0..n {
                let v = (coeffs.a_scaled[q] + coeffs.b_scaled[q] * nodes[p]) * tp[(p, q - 1)]
                    + tp[(p, q - 2)];
                tp[(p, q)] = v;
            }
        }
        for q in (lo..mid - 1).rev() {
            for p in 0..n {
                let v = (coeffs.a_scaled[q] + coeffs.b_scaled[q] * nodes[p]) * tp[(p, q + 1)]
                    + tp[(p, q + 2)];
                tp[(p, q)] = v;
            }
        }
    }
    for q in 0..n {
        tp.column_mut(q).scale_mut(1.0 / coeffs.gamma[q]);
    }
    Ok(tp)
}
