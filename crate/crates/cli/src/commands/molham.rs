use molham::cost::EnvelopePoint;
use molham::{
    eigenvalues, hamiltonian, hartree_to_cm, lambda_envelope, qpe_cost, strategy_cost, CostConfig, LambdaChoice,
    QpeCost, QromBackend, Strategy, ToyMoleculeSpec, DENSE_DIM_LIMIT,
};
use qrom::CostReport;
use rayon::prelude::*;
use serde::Serialize;

use super::DEFAULT_DIGITS;
use crate::args::{Common, MolhamArgs, Preset, StrategyArg};
use crate::io::read_text;
use crate::{render, CliError, Output};

const WATER: &str = include_str!("../../configs/water.toml");
const WATER_LARGE: &str = include_str!("../../configs/water-large.toml");
/// Default energy accuracy for phase estimation, cm⁻¹.
const DEFAULT_ENERGY_EPSILON: f64 = 1.0;

/// The molecule named by `--config`, or the bundled preset.
pub fn spec_for(a: &MolhamArgs) -> Result<ToyMoleculeSpec, CliError> {
    let text = match &a.config {
        Some(p) => read_text(p)?,
        None => match a.preset {
            Preset::Water => WATER.to_string(),
            Preset::WaterLarge => WATER_LARGE.to_string(),
        },
    };
    Ok(ToyMoleculeSpec::from_toml(&text)?)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrategyRow {
    pub strategy: Strategy,
    pub zeta_cm: f64,
    /// Exact `‖H‖_F / √N` when the dense matrix was built (LCU only).
    pub zeta_lower_cm: Option<f64>,
    pub block_encoding: CostReport,
    pub hamiltonian: CostReport,
    pub ancillas: u64,
    pub system_qubits: u64,
    /// Some table fell back from WH to SELECT-SWAP.
    pub fallback: bool,
    pub qpe: QpeCost,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MolhamReport {
    pub name: String,
    pub sizes: Vec<usize>,
    pub dimension: usize,
    /// Lowest levels in cm⁻¹; absent above the dense limit.
    pub levels: Option<Vec<f64>>,
    /// Levels relative to the ground state.
    pub transitions: Option<Vec<f64>>,
    pub digits: u32,
    pub backend: QromBackend,
    pub lambda: LambdaChoice,
    pub energy_epsilon_cm: f64,
    pub strategies: Vec<StrategyRow>,
    pub envelope: Option<Vec<EnvelopePoint>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub n: usize,
    /// System qubits.
    pub eta: u64,
    pub epsilon: f64,
    pub digits: u32,
    pub strategy: Strategy,
    /// Toffoli count of the Hamiltonian block encoding.
    pub tau: u64,
    pub t_count: u64,
    pub ancillas: u64,
}

fn config(c: &Common) -> CostConfig {
    CostConfig {
        d: c.digits.unwrap_or(DEFAULT_DIGITS),
        backend: c.backend.unwrap_or(QromBackend::SelectSwap),
        lambda: c.lambda.map_or(LambdaChoice::Optimal, |l| l.0),
        ..CostConfig::default()
    }
}

fn row(spec: &ToyMoleculeSpec, st: Strategy, cfg: &CostConfig, eps_cm: f64) -> Result<StrategyRow, CliError> {
    let sc = strategy_cost(spec, st, cfg)?;
    let qpe = qpe_cost(sc.zeta_cm(), &sc.hamiltonian, eps_cm)?;
    Ok(StrategyRow {
        strategy: st,
        zeta_cm: sc.zeta_cm(),
        zeta_lower_cm: sc.norm.lower_cm,
        block_encoding: sc.block_encoding,
        hamiltonian: sc.hamiltonian,
        ancillas: sc.ancillas,
        system_qubits: sc.system_qubits,
        fallback: sc.components.iter().any(|c| c.fallback),
        qpe,
    })
}

/// Digits for a sweep point: `⌈log2(1/ε)⌉ + 1`.
fn sweep_digits(eps: f64) -> u32 {
    (1.0 / eps).log2().ceil() as u32 + 1
}

fn resized(spec: &ToyMoleculeSpec, n: usize) -> ToyMoleculeSpec {
    let mut s = spec.clone();
    s.radial.iter_mut().for_each(|r| r.n = n);
    if let Some(a) = s.angular.as_mut() {
        a.n = n;
    }
    s
}

/// Every `(n, ε, strategy)` point, in input order.
pub fn sweep_rows(
    spec: &ToyMoleculeSpec,
    ns: &[usize],
    epsilons: &[f64],
    strategies: &[Strategy],
    base: &CostConfig,
) -> Result<Vec<SweepRow>, CliError> {
    if let Some(&e) = epsilons.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(CliError::Config(format!("sweep epsilon {e} outside (0, 1)")));
    }
    let jobs: Vec<(usize, f64, Strategy)> = ns
        .iter()
        .flat_map(|&n| epsilons.iter().flat_map(move |&e| strategies.iter().map(move |&s| (n, e, s))))
        .collect();
    jobs.par_iter()
        .map(|&(n, epsilon, st)| {
            let digits = sweep_digits(epsilon);
            let cfg = CostConfig { d: digits, epsilon, ..*base };
            let sc = strategy_cost(&resized(spec, n), st, &cfg)?;
            Ok(SweepRow {
                n,
                eta: sc.system_qubits,
                epsilon,
                digits,
                strategy: st,
                tau: sc.hamiltonian.toffoli_count,
                t_count: sc.hamiltonian.t_count,
                ancillas: sc.ancillas,
            })
        })
        .collect()
}

pub fn molham(c: &Common, a: &MolhamArgs) -> Result<Output, CliError> {
    let spec = spec_for(a)?;
    let cfg = config(c);
    let strategies = c.strategy.unwrap_or(StrategyArg::All).strategies();
    if a.sweep {
        let rows = sweep_rows(&spec, &a.sweep_n, &a.sweep_eps, &strategies, &cfg)?;
        let text = render(c.format, &rows, || {
            let mut out = String::from("n,eta,epsilon,digits,strategy,tau,tCount,ancillas\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{:e},{},{},{},{},{}\n",
                    r.n,
                    r.eta,
                    r.epsilon,
                    r.digits,
                    r.strategy.label(),
                    r.tau,
                    r.t_count,
                    r.ancillas
                ));
            }
            out
        });
        return Ok(Output { text, failure: None });
    }
    let eps_cm = c.epsilon.unwrap_or(DEFAULT_ENERGY_EPSILON);
    let dimension = spec.dim();
    let levels = if dimension <= DENSE_DIM_LIMIT {
        let h = hamiltonian(&spec)?;
        let e: Vec<f64> = eigenvalues(&h.dvr).into_iter().take(a.levels).map(hartree_to_cm).collect();
        Some(e)
    } else {
        None
    };
    let transitions = levels.as_ref().map(|l| l.iter().map(|e| e - l[0]).collect());
    let rows: Vec<StrategyRow> =
        strategies.par_iter().map(|&st| row(&spec, st, &cfg, eps_cm)).collect::<Result<_, _>>()?;
    let envelope = if a.envelope.is_empty() {
        None
    } else {
        let st = match strategies.as_slice() {
            [one] => *one,
            _ => Strategy::FbrDvr,
        };
        Some(lambda_envelope(&spec, st, cfg.d, &a.envelope)?)
    };
    let report = MolhamReport {
        name: spec.name.clone(),
        sizes: spec.sizes(),
        dimension,
        levels,
        transitions,
        digits: cfg.d,
        backend: cfg.backend,
        lambda: cfg.lambda,
        energy_epsilon_cm: eps_cm,
        strategies: rows,
        envelope,
    };
    let text = render(c.format, &report, || {
        let mut out = String::from(
            "strategy,zetaCm,blockEncodingT,hamiltonianT,hamiltonianToffoli,ancillas,systemQubits,qpeCalls,qpeT,quantumVolume,saturated\n",
        );
        for r in &report.strategies {
            out.push_str(&format!(
                "{},{:e},{},{},{},{},{},{},{},{},{}\n",
                r.strategy.label(),
                r.zeta_cm,
                r.block_encoding.t_count,
                r.hamiltonian.t_count,
                r.hamiltonian.toffoli_count,
                r.ancillas,
                r.system_qubits,
                r.qpe.calls,
                r.qpe.report.t_count,
                r.qpe.report.quantum_volume,
                r.qpe.saturated
            ));
        }
        out
    });
    Ok(Output { text, failure: None })
}
