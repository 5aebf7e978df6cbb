use serde::{Deserialize, Serialize};

use crate::circuit::QromCircuit;
use crate::gate::Gate;

/// Exact gate tallies for one construction.
///
/// `t_depth` counts Toffoli layers: every adder acts on the shared payload
/// register, so adders serialize and each contributes its ripple length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CostReport {
    pub t_count: u64,
    pub toffoli_count: u64,
    pub cnot_count: u64,
    pub clifford_count: u64,
    pub qubit_count: u64,
    pub t_depth: u64,
    pub quantum_volume: u64,
}

impl CostReport {
    /// Fills `t_count` and `quantum_volume` from the Toffoli count at 4 T each.
    pub fn from_toffoli(toffoli: u64, cnot: u64, clifford: u64, qubits: u64, depth: u64) -> Self {
        let t = 4 * toffoli;
        Self {
            t_count: t,
            toffoli_count: toffoli,
            cnot_count: cnot,
            clifford_count: clifford,
            qubit_count: qubits,
            t_depth: depth,
            quantum_volume: t * qubits,
        }
    }

    /// `toffoli + cnot / 50`: one Toffoli weighted as fifty CNOTs.
    pub fn weighted_score(&self) -> f64 {
        self.toffoli_count as f64 + self.cnot_count as f64 / 50.0
    }

    /// Toffoli count times qubit count.
    pub fn toffoli_volume(&self) -> u64 {
        self.toffoli_count * self.qubit_count
    }
}

fn lsb(k: i64) -> u32 {
    k.trailing_zeros()
}

/// `4 (b - 2 - lsb k)`, floored at zero.
pub fn adder_t_count(k: i64, b: u32) -> u64 {
    4 * adder_ancillas(k, b) as u64
}

/// `4 (b - 1 - lsb k)`, floored at zero.
pub fn controlled_adder_t_count(k: i64, b: u32) -> u64 {
    4 * controlled_adder_ancillas(k, b) as u64
}

fn adder_ancillas(k: i64, b: u32) -> u32 {
    if k == 0 {
        0
    } else {
        b.saturating_sub(2 + lsb(k))
    }
}

fn controlled_adder_ancillas(k: i64, b: u32) -> u32 {
    if k == 0 {
        0
    } else {
        b.saturating_sub(1 + lsb(k))
    }
}

/// CNOTs of a fan-out: `h(z) - 1` to fold the parity onto one address qubit,
/// `b` to copy it across the payload, then the fold undone.
pub fn pfx_cnot_count(mask: u64, b: u32) -> u64 {
    2 * (mask.count_ones() as u64).saturating_sub(1) + b as u64
}

pub(crate) fn gate_ancillas(g: &Gate) -> u32 {
    match g {
        Gate::Adder { k, width } => adder_ancillas(*k, *width),
        Gate::ControlledAdder { k, width, .. } => controlled_adder_ancillas(*k, *width),
        _ => 0,
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    t: u64,
    cnot: u64,
    single: u64,
    depth: u64,
}

fn tally(gates: &[Gate]) -> Tally {
    let mut s = Tally::default();
    for g in gates {
        match g {
            Gate::Pfx { mask, width } => s.cnot += pfx_cnot_count(*mask, *width),
            Gate::Adder { k, width } => {
                let t = adder_t_count(*k, *width);
                s.t += t;
                s.depth += t / 4;
            }
            Gate::ControlledAdder { k, width, .. } => {
                let t = controlled_adder_t_count(*k, *width);
                s.t += t;
                s.depth += t / 4;
            }
            Gate::Cnot { .. } => s.cnot += 1,
            Gate::CSwap { pairs, .. } => {
                s.t += 4 * pairs.len() as u64;
                s.cnot += 2 * pairs.len() as u64;
                s.depth += pairs.len() as u64;
            }
            Gate::X(_) | Gate::Hadamard(_) | Gate::S(_) | Gate::Sdg(_) => s.single += 1,
        }
    }
    s
}

/// Gate-by-gate cost of a QROM circuit.
pub fn cost(circuit: &QromCircuit) -> CostReport {
    let s = tally(circuit.gates());
    let qubits = circuit.register_width() as u64 + circuit.ancilla_count() as u64;
    CostReport::from_toffoli(s.t / 4, s.cnot, s.cnot + s.single, qubits, s.depth)
}

/// Cost with the support split into two halves that run on separate payload
/// registers and are merged by one extra `b`-bit adder.
pub fn cost_support_split(circuit: &QromCircuit) -> CostReport {
    let gates = circuit.gates();
    let total = tally(gates).depth;
    let mut acc = 0;
    let mut cut = gates.len();
    for (i, g) in gates.iter().enumerate() {
        acc += tally(std::slice::from_ref(g)).depth;
        if 2 * acc >= total {
            cut = i + 1;
            break;
        }
    }
    let (lo, hi) = (tally(&gates[..cut]), tally(&gates[cut..]));
    let b = circuit.payload_width();
    let merge_toffoli = b.saturating_sub(2) as u64;
    let toffoli = (lo.t + hi.t) / 4 + merge_toffoli;
    let cnot = lo.cnot + hi.cnot;
    let qubits = circuit.register_width() as u64 + b as u64 + 2 * circuit.ancilla_count() as u64;
    let depth = lo.depth.max(hi.depth) + merge_toffoli;
    CostReport::from_toffoli(toffoli, cnot, cnot + lo.single + hi.single, qubits, depth)
}
