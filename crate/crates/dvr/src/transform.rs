use nalgebra::DMatrix;

use crate::quadrature::{orthonormal_values, Quadrature};
use crate::DvrError;

/// FBR-to-DVR matrix `T_kj = Ñ_j √w_k p_j(q_k)`; rows are grid points, columns basis degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct DvrTransform {
    pub quadrature: Quadrature,
    pub matrix: DMatrix<f64>,
    pub normalizers: Vec<f64>,
}

impl DvrTransform {
    pub fn n(&self) -> usize {
        self.quadrature.n()
    }

    /// `‖TᵀT - I‖max`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n();
        let g = self.matrix.transpose() * &self.matrix;
        (g - DMatrix::<f64>::identity(n, n)).amax()
    }
}

pub fn build_transform(q: &Quadrature) -> DvrTransform {
    let n = q.n();
    let kind = q.kind;
    let mut matrix = DMatrix::zeros(n, n);
    for (k, (&x, &w)) in q.nodes.iter().zip(&q.weights).enumerate() {
        let p = orthonormal_values(kind, n, x);
        let sw = w.sqrt();
        for j in 0..n {
            matrix[(k, j)] = sw * p[j];
        }
    }
    DvrTransform {
        quadrature: q.clone(),
        matrix,
        normalizers: (0..n).map(|j| kind.normalizer(j)).collect(),
    }
}

/// `Tᵀ diag(v) T`, symmetrized.
pub fn fbr_potential(t: &DvrTransform, v: &[f64]) -> Result<DMatrix<f64>, DvrError> {
    let n = t.n();
    if v.len() != n {
        return Err(DvrError::Dimension { expected: n, found: v.len() });
    }
    let mut scaled = t.matrix.clone();
    for (k, &vk) in v.iter().enumerate() {
        scaled.row_mut(k).scale_mut(vk);
    }
    let m = t.matrix.transpose() * scaled;
    Ok((&m + m.transpose()) * 0.5)
}

/// Harmonic-oscillator position matrix `⟨m|q|n⟩` in dimensionless units.
pub fn ho_position_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |m, k| {
        if m == k + 1 {
            (m as f64 / 2.0).sqrt()
        } else if k == m + 1 {
            (k as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    })
}

/// Row-major CSV, 17 significant digits.
pub fn write_matrix_csv<W: std::io::Write>(m: &DMatrix<f64>, out: W) -> Result<(), DvrError> {
    let mut w = csv::Writer::from_writer(out);
    for r in 0..m.nrows() {
        w.write_record((0..m.ncols()).map(|c| format!("{:.16e}", m[(r, c)])))?;
    }
    w.flush()?;
    Ok(())
}

/// `node,weight` rows, 17 significant digits.
pub fn write_quadrature_csv<W: std::io::Write>(q: &Quadrature, out: W) -> Result<(), DvrError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "weight"])?;
    for (x, wt) in q.nodes.iter().zip(&q.weights) {
        w.write_record([format!("{x:.16e}"), format!("{wt:.16e}")])?;
    }
    w.flush()?;
    Ok(())
}
