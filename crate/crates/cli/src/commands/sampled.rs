use baseline::pes::{arccos_angles, normalize_raw};
use baseline::{compare_with, RatioRecord};
use qrom::{cost, pair_cancel, simulate, synthesize, CostReport, Ordering};
use serde::Serialize;
use wht::{diag_error, minimal_truncation, quantize, truncation_curve, SampledFunction};

use super::{DEFAULT_DIGITS, DEFAULT_EPSILON};
use crate::args::{CompareArgs, Common, SampleArgs, SynthArgs};
use crate::io::{load, write_atomic, Samples};
use crate::{render, CliError, Output};

/// Full `ε`-versus-`k` curves are tabulated up to this address width.
pub const CURVE_MAX_ETA: u32 = 12;
/// Exhaustive circuit simulation up to this address width.
const SIM_MAX_ETA: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub k: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WhtReport {
    pub source: String,
    pub eta: u32,
    pub digits: u32,
    pub epsilon: f64,
    /// Retained coefficients at `epsilon`.
    pub k: usize,
    /// Achieved diagonal error at `k`.
    pub error: f64,
    pub nonzero: usize,
    /// Error after keeping the `k` largest coefficients, for every `k`.
    pub curve: Option<Vec<CurvePoint>>,
}

fn sampled(s: &Samples, normalize: bool, d: u32) -> Result<SampledFunction, CliError> {
    if s.synthetic || normalize {
        Ok(quantize(&normalize_raw(&s.values, d), d)?)
    } else {
        Ok(quantize(&s.values, d)?)
    }
}

fn eps(c: &Common) -> f64 {
    c.epsilon.unwrap_or(DEFAULT_EPSILON)
}

pub fn wht_analyze(c: &Common, a: &SampleArgs) -> Result<Output, CliError> {
    let s = load(&a.source, c.eta)?;
    let d = c.digits.unwrap_or(DEFAULT_DIGITS);
    let f = sampled(&s, a.normalize, d)?;
    let epsilon = eps(c);
    let spec = minimal_truncation(&f, epsilon);
    let error = diag_error(&f, &spec.reconstruct(), d)?;
    let curve = (f.eta() <= CURVE_MAX_ETA)
        .then(|| truncation_curve(&f).into_iter().map(|(k, error)| CurvePoint { k, error }).collect::<Vec<_>>());
    let report = WhtReport {
        source: s.label,
        eta: f.eta(),
        digits: d,
        epsilon,
        k: spec.k(),
        error,
        nonzero: spec.base().support_size(),
        curve,
    };
    let text = render(c.format, &report, || {
        let mut out = String::from("k,error\n");
        match &report.curve {
            Some(curve) => curve.iter().for_each(|p| out.push_str(&format!("{},{:e}\n", p.k, p.error))),
            None => out.push_str(&format!("{},{:e}\n", report.k, report.error)),
        }
        out
    });
    Ok(Output { text, failure: None })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SynthReport {
    pub source: String,
    pub eta: u32,
    pub digits: u32,
    pub payload_bits: u32,
    pub epsilon: f64,
    pub k: usize,
    pub error: f64,
    pub gates: usize,
    pub cost_gray: CostReport,
    pub cost: CostReport,
    /// Exhaustive check of every address; absent above the simulation limit.
    pub verified: Option<bool>,
}

fn cost_row(stage: &str, r: &CostReport) -> String {
    format!(
        "{stage},{},{},{},{},{},{},{}\n",
        r.t_count, r.toffoli_count, r.cnot_count, r.clifford_count, r.qubit_count, r.t_depth, r.quantum_volume
    )
}

const COST_HEADER: &str = "tCount,toffoliCount,cnotCount,cliffordCount,qubitCount,tDepth,quantumVolume";

pub fn qrom_synth(c: &Common, a: &SynthArgs) -> Result<Output, CliError> {
    let s = load(&a.sample.source, c.eta)?;
    let d = c.digits.unwrap_or(DEFAULT_DIGITS);
    let f = sampled(&s, a.sample.normalize, d)?;
    let epsilon = eps(c);
    let spec = minimal_truncation(&f, epsilon);
    let gray = synthesize(&spec, Ordering::GrayCode);
    let circuit = pair_cancel(&gray, &spec)?;
    let target = spec.reconstruct();
    let error = diag_error(&f, &target, d)?;
    let mut failure = None;
    let verified = if f.eta() <= SIM_MAX_ETA {
        let m = 1i128 << spec.b();
        let mut ok = true;
        for (x, g) in target.iter().enumerate() {
            if simulate(&circuit, x as u64, 0)? as i128 != g.num.rem_euclid(m) {
                ok = false;
                failure = Some(format!("circuit output differs from the truncated table at x = {x}"));
                break;
            }
        }
        Some(ok)
    } else {
        None
    };
    if error >= epsilon && failure.is_none() {
        failure = Some(format!("diagonal error {error:e} is not below {epsilon:e}"));
    }
    if let Some(path) = &a.circuit {
        write_atomic(path, circuit.to_text().as_bytes())?;
    }
    let report = SynthReport {
        source: s.label,
        eta: f.eta(),
        digits: d,
        payload_bits: spec.b(),
        epsilon,
        k: spec.k(),
        error,
        gates: circuit.gates().len(),
        cost_gray: cost(&gray),
        cost: cost(&circuit),
        verified,
    };
    let text = render(c.format, &report, || {
        format!("stage,{COST_HEADER}\n") + &cost_row("gray", &report.cost_gray) + &cost_row("paired", &report.cost)
    });
    Ok(Output { text, failure })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompareReport {
    pub source: String,
    pub eta: u32,
    pub epsilon: f64,
    pub wh_digits: u32,
    pub selectswap_digits: u32,
    /// Surface values scaled into the quantizer range.
    pub raw: RatioRecord,
    /// Rotation angles `arccos(V / 2‖V‖∞)`, recentred.
    pub arccos: RatioRecord,
}

pub fn compare(c: &Common, a: &CompareArgs) -> Result<Output, CliError> {
    let s = load(&a.source, c.eta)?;
    let d = c.digits.unwrap_or(DEFAULT_DIGITS);
    let ss_d = a.ss_digits.unwrap_or(d);
    let epsilon = eps(c);
    let raw = compare_with(
        &quantize(&normalize_raw(&s.values, d), d)?,
        &quantize(&normalize_raw(&s.values, ss_d), ss_d)?,
        epsilon,
    )?;
    let angles = arccos_angles(&s.values);
    let arccos = compare_with(&quantize(&angles, d)?, &quantize(&angles, ss_d)?, epsilon)?;
    let report = CompareReport {
        source: s.label,
        eta: raw.eta,
        epsilon,
        wh_digits: d,
        selectswap_digits: ss_d,
        raw,
        arccos,
    };
    let text = render(c.format, &report, || {
        format!(
            "mode,{}\nraw,{}\narccos,{}\n",
            RatioRecord::CSV_HEADER,
            report.raw.csv_row(),
            report.arccos.csv_row()
        )
    });
    Ok(Output { text, failure: None })
}
