use std::fmt;

use qrom::{cost, pair_cancel, synthesize, CostReport, Ordering};
use serde::{Serialize, Serializer};
use wht::{minimal_truncation, SampledFunction};

use crate::selectswap::optimize_lambda;
use crate::BaselineError;

/// A SELECT-SWAP / WH quotient; zero denominators become the `∞` sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Finite(f64),
    Infinite,
}

impl Ratio {
    pub fn of(num: f64, den: f64) -> Self {
        if den == 0.0 {
            Ratio::Infinite
        } else {
            Ratio::Finite(num / den)
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Ratio::Finite(v) => *v,
            Ratio::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(v) => write!(f, "{v:.6}"),
            Ratio::Infinite => f.write_str("∞"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ratio::Finite(v) => s.serialize_f64(*v),
            Ratio::Infinite => s.serialize_str("∞"),
        }
    }
}

/// The six ratio columns plus the raw reports behind them.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioRecord {
    pub qubits: Ratio,
    pub toffoli_count: Ratio,
    pub toffoli_depth: Ratio,
    pub toffoli_volume: Ratio,
    pub cnot: Ratio,
    pub weighted: Ratio,
    pub eta: u32,
    pub epsilon: f64,
    pub wh_digits: u32,
    pub selectswap_digits: u32,
    pub retained: usize,
    pub lambda_min: u64,
    pub wh: CostReport,
    pub selectswap: CostReport,
    /// The SELECT-SWAP `cnot_count` is a lower bound; repeated here under its honest name.
    pub cnot_lower_bound: u64,
}

impl RatioRecord {
    pub fn from_reports(wh: CostReport, ss: CostReport) -> [Ratio; 6] {
        [
            Ratio::of(ss.qubit_count as f64, wh.qubit_count as f64),
            Ratio::of(ss.toffoli_count as f64, wh.toffoli_count as f64),
            Ratio::of(ss.t_depth as f64, wh.t_depth as f64),
            Ratio::of(ss.toffoli_volume() as f64, wh.toffoli_volume() as f64),
            Ratio::of(ss.cnot_count as f64, wh.cnot_count as f64),
            Ratio::of(ss.weighted_score(), wh.weighted_score()),
        ]
    }

    pub const CSV_HEADER: &'static str =
        "eta,epsilon,retained,lambda_min,qubits,toffoli_count,toffoli_depth,toffoli_volume,cnot,weighted";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.eta,
            self.epsilon,
            self.retained,
            self.lambda_min,
            self.qubits,
            self.toffoli_count,
            self.toffoli_depth,
            self.toffoli_volume,
            self.cnot,
            self.weighted
        )
    }
}

/// WH-QROM cost: minimal truncation, Gray-code ordering, then pair cancellation.
pub fn wh_cost(f: &SampledFunction, epsilon: f64) -> (usize, CostReport) {
    let spec = minimal_truncation(f, epsilon);
    let c = synthesize(&spec, Ordering::GrayCode);
    let c = pair_cancel(&c, &spec).expect("circuit built from this spectrum");
    (spec.k(), cost(&c))
}

/// Compares both QROMs on one function.
pub fn compare(f: &SampledFunction, epsilon: f64) -> Result<RatioRecord, BaselineError> {
    compare_with(f, f, epsilon)
}

/// Compares with independently quantized inputs, so each side may use its own `d`.
pub fn compare_with(
    f_wh: &SampledFunction,
    f_ss: &SampledFunction,
    epsilon: f64,
) -> Result<RatioRecord, BaselineError> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(BaselineError::Epsilon(epsilon));
    }
    if f_wh.eta() != f_ss.eta() {
        return Err(BaselineError::Shape(f_wh.eta(), f_ss.eta()));
    }
    let eta = f_wh.eta();
    let (retained, wh) = wh_cost(f_wh, epsilon);
    let (lambda_min, ss) = optimize_lambda(eta, f_ss.d(), f_ss);
    let [qubits, toffoli_count, toffoli_depth, toffoli_volume, cnot, weighted] =
        RatioRecord::from_reports(wh, ss);
    Ok(RatioRecord {
        qubits,
        toffoli_count,
        toffoli_depth,
        toffoli_volume,
        cnot,
        weighted,
        eta,
        epsilon,
        wh_digits: f_wh.d(),
        selectswap_digits: f_ss.d(),
        retained,
        lambda_min,
        wh,
        selectswap: ss,
        cnot_lower_bound: ss.cnot_count,
    })
}
