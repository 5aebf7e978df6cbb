use baseline::pes::{normalize_raw, SyntheticPes};
use baseline::wh_cost;
use molham::{ScalingFit, ScalingSample};
use rayon::prelude::*;
use serde::Serialize;
use wht::quantize;

use crate::args::{Common, FitArgs};
use crate::io::{pes_name, read_text};
use crate::{render, CliError, Output};

/// Top address width of the built-in sweep; it covers the four widths below and including it.
const DEFAULT_SWEEP_ETA: u32 = 11;
const SWEEP_WIDTHS: u32 = 4;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FitReport {
    pub source: String,
    pub fit: ScalingFit,
    pub samples: Vec<ScalingSample>,
}

/// WH-QROM Toffoli counts of a bundled surface over `η` and `ε = 2^-d`.
pub fn wh_sweep(pes: SyntheticPes, dims: u32, etas: &[u32], digits: &[u32]) -> Result<Vec<ScalingSample>, CliError> {
    let jobs: Vec<(u32, u32)> = etas.iter().flat_map(|&e| digits.iter().map(move |&d| (e, d))).collect();
    jobs.par_iter()
        .map(|&(eta, d)| {
            if dims == 0 || dims > eta {
                return Err(CliError::Config(format!("dims must lie in 1..={eta}, got {dims}")));
            }
            let f = quantize(&normalize_raw(&pes.sample(eta, dims), d), d)?;
            let epsilon = 2f64.powi(-(d as i32));
            let (_, r) = wh_cost(&f, epsilon);
            Ok(ScalingSample { eta: eta as f64, epsilon, tau: r.toffoli_count as f64 })
        })
        .collect()
}

fn parse_samples(text: &str) -> Result<Vec<ScalingSample>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| CliError::Parse(format!("line 1: {e}")))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Parse(format!("line 1: missing `{name}` column")))
    };
    let (ie, iw, it) = (col("eta")?, col("epsilon")?, col("tau")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Parse(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let get = |i: usize| -> Result<f64, CliError> {
            let s = rec.get(i).unwrap_or("");
            s.parse().map_err(|_| CliError::Parse(format!("line {line}: not a number: {s:?}")))
        };
        out.push(ScalingSample { eta: get(ie)?, epsilon: get(iw)?, tau: get(it)? });
    }
    Ok(out)
}

pub fn fit_scaling(c: &Common, a: &FitArgs) -> Result<Output, CliError> {
    let (source, samples) = match &a.input {
        Some(p) => ("file".to_string(), parse_samples(&read_text(p)?)?),
        None => {
            let top = c.eta.unwrap_or(DEFAULT_SWEEP_ETA);
            if top < SWEEP_WIDTHS {
                return Err(CliError::Config(format!("eta must be at least {SWEEP_WIDTHS} for the sweep")));
            }
            let etas: Vec<u32> = (top + 1 - SWEEP_WIDTHS..=top).collect();
            let label = format!("wh-{}-{}d", pes_name(a.pes), a.dims);
            (label, wh_sweep(a.pes, a.dims, &etas, &a.sweep_digits)?)
        }
    };
    let fit = molham::fit_scaling(&samples)?;
    let report = FitReport { source, fit, samples };
    let text = render(c.format, &report, || {
        let f = &report.fit;
        format!("c1,c2,c3,r2,samples\n{},{},{},{},{}\n", f.c1, f.c2, f.c3, f.r2, f.samples)
    });
    Ok(Output { text, failure: None })
}
