use dvr::{build_transform, gauss_quadrature, init_columns, recursion_columns, write_quadrature_csv, QuadratureKind, RecursionCoeffs};
use serde::Serialize;

use crate::args::{Common, DvrArgs};
use crate::{render, CliError, Output};

pub const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Absolute for Legendre; relative to `Σ w |x|^k` for Hermite.
pub const EXACTNESS_TOL: f64 = 1e-11;
pub const RECURSION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DvrReport {
    pub kind: String,
    pub n: usize,
    /// `‖TᵀT − I‖max`.
    pub orthogonality_error: f64,
    /// Worst monomial error up to degree `2n − 1`.
    pub exactness_error: f64,
    pub segment: usize,
    /// `‖T_rec − T‖max` for the segmented column recursion.
    pub recursion_error: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn dvr_check(c: &Common, a: &DvrArgs) -> Result<Output, CliError> {
    let kind: QuadratureKind = a.kind.parse()?;
    let q = gauss_quadrature(kind, a.n)?;
    let t = build_transform(&q);
    let exactness_error = (0..2 * a.n as u32)
        .map(|k| {
            let got = q.integrate(|x| x.powi(k as i32));
            let scale = match kind {
                QuadratureKind::Hermite => q.integrate(|x| x.abs().powi(k as i32)).max(1.0),
                QuadratureKind::Legendre => 1.0,
            };
            (got - kind.moment(k)).abs() / scale
        })
        .fold(0.0, f64::max);
    let coeffs = RecursionCoeffs::new(kind, a.n, a.segment)?;
    let rebuilt = recursion_columns(&coeffs, &q.nodes, &init_columns(&t.matrix, &coeffs))?;
    let report = DvrReport {
        kind: format!("{kind:?}").to_lowercase(),
        n: a.n,
        orthogonality_error: t.orthogonality_error(),
        exactness_error,
        segment: a.segment,
        recursion_error: (rebuilt - &t.matrix).amax(),
        nodes: q.nodes.clone(),
        weights: q.weights.clone(),
    };
    let mut failures = Vec::new();
    if !(report.orthogonality_error < ORTHOGONALITY_TOL) {
        failures.push(format!("orthogonality {:e} ≥ {ORTHOGONALITY_TOL:e}", report.orthogonality_error));
    }
    if !(report.exactness_error < EXACTNESS_TOL) {
        failures.push(format!("exactness {:e} ≥ {EXACTNESS_TOL:e}", report.exactness_error));
    }
    if !(report.recursion_error < RECURSION_TOL) {
        failures.push(format!("recursion {:e} ≥ {RECURSION_TOL:e}", report.recursion_error));
    }
    let mut csv_err = None;
    let text = render(c.format, &report, || {
        let mut buf = Vec::new();
        if let Err(e) = write_quadrature_csv(&q, &mut buf) {
            csv_err = Some(e);
        }
        String::from_utf8(buf).expect("csv is utf-8")
    });
    if let Some(e) = csv_err {
        return Err(e.into());
    }
    Ok(Output { text, failure: (!failures.is_empty()).then(|| failures.join("; ")) })
}
