use baseline::pes::normalize_raw;
use baseline::{cnot_lower_bound, wh_cost, SelectSwapModel};
use qrom::CostReport;
use serde::{Deserialize, Serialize};
use wht::{quantize, SampledFunction};

use crate::hamiltonian::{mode_bases, ModeBasis, Pes};
use crate::norms::{estimate_with, term_table_with, union_sparsity, HamTerm, NormEstimate, Strategy};
use crate::spec::{Shape, ToyMoleculeSpec};
use crate::MolhamError;

/// Largest table handed to WH synthesis; bigger tables use SELECT-SWAP.
pub const WH_MAX_ENTRIES: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QromBackend {
    SelectSwap,
    Wh,
}

impl std::str::FromStr for QromBackend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "SELECT_SWAP" | "SELECTSWAP" | "SS" => Ok(Self::SelectSwap),
            "WH" => Ok(Self::Wh),
            _ => Err(format!("unknown backend `{s}`")),
        }
    }
}

/// How SELECT-SWAP picks `λ` for every table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LambdaChoice {
    /// Toffoli-optimal per table.
    Optimal,
    /// `round(s · λ_opt)`, clamped to `[1, 2^η]`.
    Scaled(f64),
    /// One `λ` for every table, clamped to `[1, 2^η]`.
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CostConfig {
    /// Bits per loaded word.
    pub d: u32,
    /// Truncation target for WH synthesis.
    pub epsilon: f64,
    pub backend: QromBackend,
    pub lambda: LambdaChoice,
}

impl Default for CostConfig {
    fn default() -> Self {
        Self { d: 15, epsilon: 2f64.powi(-10), backend: QromBackend::SelectSwap, lambda: LambdaChoice::Optimal }
    }
}

/// `⌈log2 n⌉`, zero for `n ≤ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Toffoli-optimal `λ` for `⌈2^η/λ⌉ + 2dλ`; ties go to the smaller `λ`.
pub fn best_lambda(eta: u32, d: u32) -> u64 {
    let n = 1u64 << eta;
    let cost = |l: u64| n.div_ceil(l) + 2 * d as u64 * l;
    let guess = ((n as f64) / (2.0 * d.max(1) as f64)).sqrt();
    let lo = ((guess / 2.0).floor() as u64).max(1);
    let hi = ((2.0 * guess).ceil() as u64 + 2).min(n);
    (lo..=hi.max(lo)).min_by_key(|&l| (cost(l), l)).unwrap_or(1)
}

/// A priced table lookup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Priced {
    pub report: CostReport,
    pub ancillas: u64,
    /// WH was requested but SELECT-SWAP priced the table.
    pub fallback: bool,
}

impl Priced {
    fn zero() -> Self {
        Self { report: CostReport::default(), ancillas: 0, fallback: false }
    }
}

fn wh_table(entries: u64, d: u32, data: &[f64]) -> Option<SampledFunction> {
    let eta = ceil_log2(entries);
    let mut padded = data.to_vec();
    padded.resize(1usize << eta, 0.0);
    quantize(&normalize_raw(&padded, d), d).ok()
}

/// `C_Q(entries, d)`: one table lookup of `d`-bit words.
pub fn c_q(entries: u64, d: u32, data: Option<&[f64]>, cfg: &CostConfig) -> Priced {
    if entries <= 1 || d == 0 {
        return Priced::zero();
    }
    let eta = ceil_log2(entries);
    if cfg.backend == QromBackend::Wh {
        if let Some(f) = data
            .filter(|_| entries <= WH_MAX_ENTRIES && eta + d <= 62)
            .and_then(|v| wh_table(entries, d, v))
        {
            let (_, r) = wh_cost(&f, cfg.epsilon);
            return Priced { report: r, ancillas: r.qubit_count.saturating_sub(eta as u64), fallback: false };
        }
    }
    let opt = best_lambda(eta, d);
    let cap = 1u64 << eta;
    let lambda = match cfg.lambda {
        LambdaChoice::Optimal => opt,
        LambdaChoice::Scaled(s) => ((s * opt as f64).round() as u64).clamp(1, cap),
        LambdaChoice::Fixed(l) => l.clamp(1, cap),
    };
    let m = SelectSwapModel::new(eta, d, lambda).expect("lambda clamped to [1, 2^eta]");
    let cnot = match data.and_then(|v| wh_table(entries, d, v)) {
        Some(f) => cnot_lower_bound(&f),
        None => entries * d as u64 / 2,
    };
    let report = CostReport::from_toffoli(m.toffoli(), cnot, cnot, m.qubits(), m.toffoli_depth());
    Priced {
        report,
        ancillas: m.qubits() - eta as u64,
        fallback: cfg.backend == QromBackend::Wh,
    }
}

/// `C_D(entries)`: a diagonal phase unitary.
///
/// SELECT-SWAP loads, adds into the phase-gradient register (`d` Toffolis) and
/// unloads. WH applies the phase in a single pass.
pub fn c_d(entries: u64, d: u32, data: Option<&[f64]>, cfg: &CostConfig) -> Priced {
    if entries <= 1 {
        return Priced::zero();
    }
    let q = c_q(entries, d, data, cfg);
    if cfg.backend == QromBackend::Wh && !q.fallback {
        return q;
    }
    let r = q.report;
    let toffoli = 2 * r.toffoli_count + d as u64;
    Priced {
        report: CostReport::from_toffoli(
            toffoli,
            2 * r.cnot_count,
            2 * r.clifford_count,
            r.qubit_count,
            2 * r.t_depth + d as u64,
        ),
        ancillas: q.ancillas,
        fallback: q.fallback,
    }
}

/// `C^DVR`: `Σ_i 2⌊π√n_i/4⌋ C_Q(n_i², d)` over the transform entries.
pub fn c_dvr(bases: &[ModeBasis], d: u32, cfg: &CostConfig) -> Priced {
    let mut total = CostReport::default();
    let mut anc = 0;
    let mut fallback = false;
    for b in bases {
        let n = b.n() as u64;
        let data: Vec<f64> = b.transform.matrix.iter().copied().collect();
        let inner = c_q(n * n, d, Some(&data), cfg);
        let r = dvr::dvr_oracle_cost(&[n], d, |_, _| inner.report);
        add_into(&mut total, &r, 1);
        total.qubit_count = total.qubit_count.max(r.qubit_count);
        anc = anc.max(inner.ancillas);
        fallback |= inner.fallback;
    }
    total.quantum_volume = total.t_count * total.qubit_count;
    Priced { report: total, ancillas: anc, fallback }
}

fn add_into(acc: &mut CostReport, r: &CostReport, count: u64) {
    acc.t_count += count * r.t_count;
    acc.toffoli_count += count * r.toffoli_count;
    acc.cnot_count += count * r.cnot_count;
    acc.clifford_count += count * r.clifford_count;
    acc.t_depth += count * r.t_depth;
}

/// One line of a strategy's cost table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub name: String,
    pub count: u64,
    /// Table size the primitive is priced at.
    pub entries: u64,
    pub unit: CostReport,
    pub ancillas: u64,
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StrategyCost {
    pub strategy: Strategy,
    pub backend: QromBackend,
    pub d: u32,
    /// Cost of the partial block encodings.
    pub block_encoding: CostReport,
    /// Full Hamiltonian block encoding, `C_H`.
    pub hamiltonian: CostReport,
    pub ancillas: u64,
    pub system_qubits: u64,
    pub components: Vec<Component>,
    pub norm: NormEstimate,
}

impl StrategyCost {
    pub fn zeta_cm(&self) -> f64 {
        self.norm.total_cm
    }
}

enum Item {
    Diag { entries: u64, data: Option<Vec<f64>> },
    Lookup { entries: u64, bits: u32 },
    Dvr,
    /// T gates booked directly.
    Slack { t: u64 },
}

struct Line {
    name: String,
    count: u64,
    item: Item,
    /// Part of `C_H` only, not of `C_BE`.
    outer: bool,
}

fn line(name: &str, count: u64, item: Item) -> Line {
    Line { name: name.into(), count, item, outer: false }
}

fn nonzeros(m: &nalgebra::DMatrix<f64>) -> Vec<f64> {
    m.iter().copied().filter(|v| v.abs() > 1e-14).collect()
}

/// Explicit constants for the asymptotic slack terms, booked as T gates:
/// `D² log2 D` controls, `D √log2(1/ε)` state preparation, `log2(2J+1)` rotor oracle.
fn outer_slack(spec: &ToyMoleculeSpec, cfg: &CostConfig) -> Vec<Line> {
    let dm = spec.modes() as f64;
    let ctl = (dm * dm * dm.log2()).ceil() as u64;
    let prep = (dm * (1.0 / cfg.epsilon).log2().max(0.0).sqrt()).ceil() as u64;
    let rot = (2.0 * spec.j as f64 + 1.0).log2().ceil() as u64;
    vec![
        Line { name: "controlled terms".into(), count: 1, item: Item::Slack { t: ctl }, outer: true },
        Line { name: "ancilla state preparation".into(), count: 1, item: Item::Slack { t: prep }, outer: true },
        Line { name: "rotor oracle".into(), count: 1, item: Item::Slack { t: rot }, outer: true },
    ]
}

fn fbr_dvr_plan(spec: &ToyMoleculeSpec, bases: &[ModeBasis], cfg: &CostConfig) -> Vec<Line> {
    let dims = spec.sizes();
    let nr = spec.radial.len();
    let sym = spec.is_exchange_symmetric();
    let coupled = spec.inv_mu12() != 0.0;
    let mut plan = Vec::new();
    for i in 0..nr {
        if sym && i > 0 {
            continue;
        }
        let mut p = nonzeros(&bases[i].deriv);
        p.resize(2 * dims[i], 0.0);
        plan.push(line(
            &format!("P_R{} elements", i + 1),
            4,
            Item::Diag { entries: 2 * dims[i] as u64, data: Some(p) },
        ));
    }
    if spec.shape() == Shape::Triatomic {
        let nt = dims[2] as u64;
        let pts = &bases[2].points;
        plan.push(line(
            "P_theta elements",
            4,
            Item::Diag { entries: nt * nt / 2, data: Some(nonzeros(&bases[2].deriv)) },
        ));
        let cnt = |n: u64| if coupled { n } else { 0 };
        plan.push(line("cos theta", cnt(1), Item::Diag { entries: nt, data: Some(pts.iter().map(|t| t.cos()).collect()) }));
        plan.push(line("sin theta", cnt(2), Item::Diag { entries: nt, data: Some(pts.iter().map(|t| t.sin()).collect()) }));
        for i in 0..nr {
            if sym && i > 0 {
                continue;
            }
            let inv: Vec<f64> = bases[i].points.iter().map(|r| 1.0 / r).collect();
            plan.push(line(
                &format!("1/R{}", i + 1),
                cnt(1),
                Item::Diag { entries: dims[i] as u64, data: Some(inv) },
            ));
        }
    }
    let v = sample_pes(spec, bases);
    plan.push(line("potential", 1, Item::Diag { entries: v.len() as u64, data: Some(v) }));
    plan.push(line("DVR transforms (block encoding)", 2, Item::Dvr));
    let sys_bits: u64 = dims.iter().map(|&n| ceil_log2(n as u64) as u64).sum();
    plan.push(line("swaps and column oracles", 1, Item::Slack { t: sys_bits }));
    plan.push(Line { name: "DVR transforms (Hamiltonian)".into(), count: 4, item: Item::Dvr, outer: true });
    plan.extend(outer_slack(spec, cfg));
    plan
}

fn live_union(terms: &[HamTerm]) -> u64 {
    let live: Vec<Vec<usize>> = terms.iter().filter(|t| t.coeff_max != 0.0).map(|t| t.pattern.clone()).collect();
    union_sparsity(&live)
}

fn full_dvr_plan(spec: &ToyMoleculeSpec, terms: &[HamTerm], cfg: &CostConfig) -> Vec<Line> {
    let rho = live_union(terms);
    let n = spec.dim() as u64;
    let mut plan = Vec::new();
    if rho > 1 {
        plan.push(line("element oracle", 4, Item::Lookup { entries: rho * n, bits: cfg.d }));
        plan.push(line("amplitude rotation", 2, Item::Diag { entries: 1u64 << cfg.d, data: None }));
        plan.push(line("column oracle", 1, Item::Lookup { entries: rho * n, bits: ceil_log2(n) }));
    } else {
        plan.push(line("element oracle", 2, Item::Lookup { entries: n, bits: cfg.d }));
        plan.push(line("amplitude rotation", 2, Item::Diag { entries: 1u64 << cfg.d, data: None }));
    }
    plan.extend(outer_slack(spec, cfg));
    plan
}

fn separate_dvr_plan(spec: &ToyMoleculeSpec, terms: &[HamTerm], cfg: &CostConfig) -> Vec<Line> {
    let dims = spec.sizes();
    let mut plan = Vec::new();
    let mut live = 0u64;
    for t in terms.iter() {
        let rho = t.sparsity();
        let dense_rows: u64 = t
            .pattern
            .iter()
            .zip(&dims)
            .filter(|(p, _)| **p > 1)
            .map(|(_, &n)| n as u64)
            .product();
        let count = u64::from(t.coeff_max != 0.0);
        live += count;
        if rho > 1 {
            let entries = rho * t.table_len.max(dense_rows);
            plan.push(line(&t.name, 2 * count, Item::Diag { entries, data: None }));
        } else {
            plan.push(line(&t.name, count, Item::Diag { entries: t.table_len, data: None }));
        }
    }
    plan.push(line("term selection", 1, Item::Slack { t: 4 * ceil_log2(live) as u64 }));
    plan.extend(outer_slack(spec, cfg));
    plan
}

fn sample_pes(spec: &ToyMoleculeSpec, bases: &[ModeBasis]) -> Vec<f64> {
    let pes = Pes::new(spec);
    let dims: Vec<usize> = bases.iter().map(ModeBasis::n).collect();
    let total: usize = dims.iter().product();
    let mut x = vec![0.0; dims.len()];
    (0..total)
        .map(|j| {
            let mut r = j;
            for k in (0..dims.len()).rev() {
                x[k] = bases[k].points[r % dims[k]];
                r /= dims[k];
            }
            pes.eval(&x)
        })
        .collect()
}

/// LCU over Pauli strings: `3N² log2 N` T plus `4⌈√N⌉` for state preparation,
/// `(27/4) N² log2 N` Cliffords.
pub fn lcu_cost(n: u64) -> (CostReport, u64) {
    let lg = ceil_log2(n) as u64;
    let n2lg = (n as u128 * n as u128 * lg as u128) as u64;
    let prep = 4 * (n as f64).sqrt().ceil() as u64;
    let t = 3 * n2lg + prep;
    let clifford = 27 * n2lg / 4 + prep;
    let paulis = 3 * n2lg / 4;
    let ancillas = 2 * lg + ceil_log2(paulis.max(1)) as u64 + (n as f64).sqrt().ceil() as u64;
    let qubits = lg + ancillas;
    let report = CostReport {
        t_count: t,
        toffoli_count: paulis,
        cnot_count: 3 * paulis,
        clifford_count: clifford,
        qubit_count: qubits,
        t_depth: paulis + prep,
        quantum_volume: t * qubits,
    };
    (report, ancillas)
}

/// Prices one strategy for `spec`; `hamiltonian` is `C_H` and includes the
/// four extra transforms of the mixed representation.
pub fn strategy_cost(spec: &ToyMoleculeSpec, strategy: Strategy, cfg: &CostConfig) -> Result<StrategyCost, MolhamError> {
    if cfg.d == 0 || cfg.d > 33 {
        return Err(MolhamError::Argument(format!("d = {} outside 1..=33", cfg.d)));
    }
    if !(cfg.epsilon > 0.0) {
        return Err(MolhamError::Argument(format!("epsilon = {} must be positive", cfg.epsilon)));
    }
    spec.validate()?;
    let bases = mode_bases(spec)?;
    let terms = term_table_with(spec, &bases);
    let norm = estimate_with(spec, strategy, &terms)?;
    let dims = spec.sizes();
    let system_qubits: u64 = dims.iter().map(|&n| ceil_log2(n as u64) as u64).sum();
    if strategy == Strategy::LcuFbr {
        let (r, anc) = lcu_cost(spec.dim() as u64);
        return Ok(StrategyCost {
            strategy,
            backend: cfg.backend,
            d: cfg.d,
            block_encoding: r,
            hamiltonian: r,
            ancillas: anc,
            system_qubits,
            components: vec![Component {
                name: "Pauli LCU".into(),
                count: 1,
                entries: spec.dim() as u64,
                unit: r,
                ancillas: anc,
                fallback: false,
            }],
            norm,
        });
    }
    let plan = match strategy {
        Strategy::FbrDvr => fbr_dvr_plan(spec, &bases, cfg),
        Strategy::FullDvr => full_dvr_plan(spec, &terms, cfg),
        Strategy::SeparateDvr => separate_dvr_plan(spec, &terms, cfg),
        Strategy::LcuFbr => unreachable!(),
    };
    let mut dvr_cache: Option<Priced> = None;
    let mut be = CostReport::default();
    let mut outer = CostReport::default();
    let mut components = Vec::with_capacity(plan.len());
    let mut anc_max = 0;
    for l in plan {
        let (p, entries) = if l.count == 0 {
            (Priced::zero(), 0)
        } else {
            match &l.item {
                Item::Diag { entries, data } => (c_d(*entries, cfg.d, data.as_deref(), cfg), *entries),
                Item::Lookup { entries, bits } => (c_q(*entries, *bits, None, cfg), *entries),
                Item::Dvr => {
                    let p = *dvr_cache.get_or_insert_with(|| c_dvr(&bases, cfg.d, cfg));
                    (p, dims.iter().map(|&n| (n * n) as u64).sum())
                }
                Item::Slack { t } => (
                    Priced {
                        report: CostReport { t_count: *t, t_depth: *t, ..CostReport::default() },
                        ancillas: 0,
                        fallback: false,
                    },
                    0,
                ),
            }
        };
        if l.count > 0 {
            anc_max = anc_max.max(p.ancillas);
        }
        add_into(if l.outer { &mut outer } else { &mut be }, &p.report, l.count);
        components.push(Component {
            name: l.name,
            count: l.count,
            entries,
            unit: p.report,
            ancillas: p.ancillas,
            fallback: p.fallback,
        });
    }
    let structural = structural_ancillas(spec, strategy, &terms, cfg);
    let ancillas = anc_max + structural;
    let qubits = system_qubits + ancillas;
    be.qubit_count = qubits;
    be.quantum_volume = be.t_count * qubits;
    let mut h = be;
    add_into(&mut h, &outer, 1);
    h.quantum_volume = h.t_count * qubits;
    Ok(StrategyCost {
        strategy,
        backend: cfg.backend,
        d: cfg.d,
        block_encoding: be,
        hamiltonian: h,
        ancillas,
        system_qubits,
        components,
        norm,
    })
}

/// Registers shared by every stage: phase gradient (`d`), branch index,
/// exchange control and success flags.
fn structural_ancillas(spec: &ToyMoleculeSpec, strategy: Strategy, terms: &[HamTerm], cfg: &CostConfig) -> u64 {
    let d = cfg.d as u64;
    match strategy {
        Strategy::FbrDvr => d + 3 + u64::from(spec.is_exchange_symmetric()) + 2,
        Strategy::FullDvr => d + ceil_log2(live_union(terms)) as u64 + 2,
        Strategy::SeparateDvr => {
            let rho = terms.iter().map(HamTerm::sparsity).max().unwrap_or(1);
            d + ceil_log2(terms.len() as u64) as u64 + ceil_log2(rho) as u64 + 2
        }
        Strategy::LcuFbr => 0,
    }
}

/// One point of a `λ`-scale sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnvelopePoint {
    pub scale: f64,
    pub t_count: u64,
    pub ancillas: u64,
}

/// `C_H` T-count and ancillas with every table's `λ` scaled by `s`.
pub fn lambda_envelope(
    spec: &ToyMoleculeSpec,
    strategy: Strategy,
    d: u32,
    scales: &[f64],
) -> Result<Vec<EnvelopePoint>, MolhamError> {
    scales
        .iter()
        .map(|&s| {
            let cfg = CostConfig { d, lambda: LambdaChoice::Scaled(s), ..CostConfig::default() };
            let c = strategy_cost(spec, strategy, &cfg)?;
            Ok(EnvelopePoint { scale: s, t_count: c.hamiltonian.t_count, ancillas: c.ancillas })
        })
        .collect()
}

/// `2^k` for `k = lo..=hi`.
pub fn power_scales(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Counts of the polyspherical cost tables for `A` atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolysphericalSizes {
    pub atoms: u32,
    pub n_r: u64,
    pub n_theta: u64,
    pub n_phi: u64,
    pub j: u32,
}

/// One row of a polyspherical cost table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub term: String,
    pub rho: u64,
    pub n: u64,
    pub count: u64,
    /// Sum over the row: `count × (fused cost of one unitary)`.
    pub cost: CostReport,
}

fn fused(rho: u64, n: u64, d: u32, cfg: &CostConfig) -> CostReport {
    let mut r = CostReport::default();
    if rho > 1 {
        add_into(&mut r, &c_d(rho.saturating_mul(n), d, None, cfg).report, 2);
    } else {
        add_into(&mut r, &c_d(n, d, None, cfg).report, 1);
    }
    r
}

fn rows(spec: &[(&str, u64, u64, u64)], d: u32, cfg: &CostConfig) -> Vec<TableRow> {
    spec.iter()
        .map(|&(term, rho, n, count)| {
            let mut cost = CostReport::default();
            if count > 0 {
                add_into(&mut cost, &fused(rho, n, d, cfg), count);
            }
            TableRow { term: term.into(), rho, n, count, cost }
        })
        .collect()
}

/// DVR cost table: each unitary priced as a fused `ρ`-sparse encoding.
pub fn polyspherical_dvr_table(s: &PolysphericalSizes, cfg: &CostConfig) -> Vec<TableRow> {
    let a = s.atoms as u64;
    let (r, t, p) = (s.n_r, s.n_theta, s.n_phi);
    let jj = 2 * s.j as u64 + 1;
    let a1 = a.saturating_sub(1);
    let a2 = a.saturating_sub(2);
    let a3 = a.saturating_sub(3);
    let a4 = a.saturating_sub(4);
    let v = r.saturating_pow(a1 as u32).saturating_mul(t.saturating_pow(a2 as u32)).saturating_mul(p.saturating_pow(a3 as u32));
    let rot = u64::from(s.j > 0);
    rows(
        &[
            ("U_vib(R_i,R_i)", r, r, a1),
            ("U_vib(u_i,u_i)", t, r * r * t, a2),
            ("U_vib(phi_i,phi_i)", p, r.pow(3) * t * t * p, a3),
            ("U_vib(u_i,u_j)", t * t, r * t * t * p * p, a2 * a3 / 2),
            ("U_vib(phi_i,phi_j)", p * p, r * r * t.pow(3) * p * p, a3 * a4 / 2),
            ("U_vib(u_i,phi_i)", t * p, r * t * t * p, a3),
            ("U_vib(u_i,phi_j)", t * p, r * t.pow(3) * p * p, a3 * a3),
            ("U_cor(x|y,u_j)", t, r * t * p, 2 * a2 * rot),
            ("U_cor(z,u_j)", t, r * t * t * p, a2 * rot),
            ("U_cor(x,phi_j)", p, r * t * t * p, a3 * rot),
            ("U_cor(y,phi_j)", p, r * t * p, a3 * rot),
            ("U_cor(z,phi_j)", p, r * r * t * t * p, a3 * rot),
            ("U_mu(z,z)", 1, r * r * t, rot),
            ("U_mu(x|y,x|y)", 1, r, 2 * rot),
            ("U_mu(x,z)", 1, r * t, rot),
            ("U_Jz", 1, jj, 2 * rot),
            ("U_Jx|y", 2, jj, 4 * rot),
            ("U_V", 1, v, 1),
        ],
        cfg.d,
        cfg,
    )
}

/// Mixed-representation cost table: momenta, metric samples and the potential.
pub fn polyspherical_fbr_dvr_table(s: &PolysphericalSizes, cfg: &CostConfig) -> Vec<TableRow> {
    let a = s.atoms as u64;
    let (r, t, p) = (s.n_r, s.n_theta, s.n_phi);
    let jj = 2 * s.j as u64 + 1;
    let a1 = a.saturating_sub(1);
    let a2 = a.saturating_sub(2);
    let a3 = a.saturating_sub(3);
    let a4 = a.saturating_sub(4);
    let v = r.saturating_pow(a1 as u32).saturating_mul(t.saturating_pow(a2 as u32)).saturating_mul(p.saturating_pow(a3 as u32));
    let rot = u64::from(s.j > 0);
    rows(
        &[
            ("P_R_i", 2, r, a1),
            ("P_u_i", t / 2, t, a2),
            ("P_phi_i", p / 2, p, a3),
            ("g(u_i,u_i)", 1, r * r * t, a2),
            ("g(phi_i,phi_i)", 1, r.pow(3) * t * t * p, a3),
            ("g(u_i,u_j)", 1, r * t * t * p * p, a2 * a3 / 2),
            ("g(phi_i,phi_j)", 1, r * r * t.pow(3) * p * p, a3 * a4 / 2),
            ("g(u_i,phi_i)", 1, r * t * t * p, a3),
            ("g(u_i,phi_j)", 1, r * t.pow(3) * p * p, a3 * a3),
            ("Gamma(x|y,u_j)", 1, r * t * p, 2 * a2 * rot),
            ("Gamma(z,u_j)", 1, r * t * t * p, a2 * rot),
            ("Gamma(x,phi_j)", 1, r * t * t * p, a3 * rot),
            ("Gamma(y,phi_j)", 1, r * t * p, a3 * rot),
            ("Gamma(z,phi_j)", 1, r * r * t * t * p, a3 * rot),
            ("mu(z,z)", 1, r * r * t, rot),
            ("mu(x|y,x|y)", 1, r, 2 * rot),
            ("mu(x,z)", 1, r * t, rot),
            ("J_z", 1, jj, rot),
            ("J_x|y", 2, jj, 2 * rot),
            ("V", 1, v, 1),
        ],
        cfg.d,
        cfg,
    )
}

/// Field-wise sum of a cost table.
pub fn table_total(rows: &[TableRow]) -> CostReport {
    let mut t = CostReport::default();
    for r in rows {
        add_into(&mut t, &r.cost, 1);
    }
    t
}

/// QPE over a block-encoded Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QpeCost {
    /// `ζ / ε`.
    pub ratio: f64,
    /// `⌈π ζ / (2ε)⌉` block-encoding calls.
    pub calls: u64,
    pub phase_qubits: u64,
    pub report: CostReport,
    /// Some count exceeded `u64` and is pinned at `u64::MAX`.
    pub saturated: bool,
}

/// `calls = ⌈πζ/(2ε)⌉`, T-count `calls × C_H`, plus a `⌈log2(ζ/ε)⌉`-qubit phase register.
pub fn qpe_cost(zeta_cm: f64, c_h: &CostReport, epsilon_cm: f64) -> Result<QpeCost, MolhamError> {
    if !(epsilon_cm > 0.0) || !epsilon_cm.is_finite() {
        return Err(MolhamError::Argument(format!("epsilon = {epsilon_cm} must be positive")));
    }
    if !(zeta_cm >= 0.0) || !zeta_cm.is_finite() {
        return Err(MolhamError::Argument(format!("zeta = {zeta_cm} must be finite and nonnegative")));
    }
    let ratio = zeta_cm / epsilon_cm;
    let x = std::f64::consts::PI * ratio / 2.0;
    let r = x.round();
    let calls = if (x - r).abs() < 1e-9 { r } else { x.ceil() } as u64;
    let phase_qubits = if ratio > 1.0 { ratio.log2().ceil() as u64 } else { 0 };
    let qubits = c_h.qubit_count + phase_qubits;
    let mut saturated = x >= u64::MAX as f64;
    let mut mul = |a: u64, b: u64| {
        a.checked_mul(b).unwrap_or_else(|| {
            saturated = true;
            u64::MAX
        })
    };
    let t = mul(calls, c_h.t_count);
    let report = CostReport {
        t_count: t,
        toffoli_count: mul(calls, c_h.toffoli_count),
        cnot_count: mul(calls, c_h.cnot_count),
        clifford_count: mul(calls, c_h.clifford_count),
        qubit_count: qubits,
        t_depth: mul(calls, c_h.t_depth),
        quantum_volume: mul(t, qubits),
    };
    Ok(QpeCost { ratio, calls, phase_qubits, report, saturated })
}
