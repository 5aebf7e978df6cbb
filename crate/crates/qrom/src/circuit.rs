use std::fmt;

use serde::{Deserialize, Serialize};
use wht::TruncatedSpectrum;

use crate::error::{QromError, Result};
use crate::gate::{wrap_signed, Gate};

/// Order in which the commuting `W_z` blocks are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    /// Inverse-Gray rank of the mask; adjacent fan-outs are merged.
    GrayCode,
    /// Largest coefficient first; every block keeps both of its fan-outs.
    MagnitudeDescending,
}

impl std::str::FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gray" | "gray-code" => Ok(Ordering::GrayCode),
            "magnitude" | "magnitude-descending" => Ok(Ordering::MagnitudeDescending),
            _ => Err(format!("unknown ordering `{s}`")),
        }
    }
}

/// A gate-level WH-QROM: `|x⟩|y⟩ ↦ |x⟩|y + 2^η g(x) mod 2^b⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QromCircuit {
    eta: u32,
    b: u32,
    ordering: Ordering,
    gates: Vec<Gate>,
}

impl QromCircuit {
    /// A circuit from raw gates; widths and qubit indices are validated.
    pub fn from_gates(eta: u32, b: u32, ordering: Ordering, gates: Vec<Gate>) -> Result<Self> {
        let c = Self { eta, b, ordering, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn identity(eta: u32, b: u32) -> Self {
        Self { eta, b, ordering: Ordering::GrayCode, gates: Vec::new() }
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    /// Payload width `b = η + d`.
    pub fn payload_width(&self) -> u32 {
        self.b
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Address plus payload qubits; adder ancillas are not addressable.
    pub fn register_width(&self) -> usize {
        (self.eta + self.b) as usize
    }

    /// Largest transient ancilla demand of any single adder.
    pub fn ancilla_count(&self) -> u32 {
        self.gates.iter().map(crate::cost::gate_ancillas).max().unwrap_or(0)
    }

    fn validate(&self) -> Result<()> {
        let width = self.register_width();
        let check = |q: usize| {
            if q < width {
                Ok(())
            } else {
                Err(QromError::Qubit { qubit: q, width })
            }
        };
        for g in &self.gates {
            match g {
                Gate::Pfx { mask, width: w } => {
                    if *w != self.b || (*mask >> self.eta) != 0 {
                        return Err(QromError::Mismatch(format!("`{g}` does not fit the registers")));
                    }
                }
                Gate::Adder { k, width: w } | Gate::ControlledAdder { k, width: w, .. } => {
                    if *w != self.b || (*k as i128).unsigned_abs() >= 1u128 << w {
                        return Err(QromError::Mismatch(format!("`{g}` does not fit the payload")));
                    }
                    if let Gate::ControlledAdder { control, .. } = g {
                        check(*control)?;
                    }
                }
                Gate::Cnot { control, target } => {
                    check(*control)?;
                    check(*target)?;
                }
                Gate::CSwap { control, pairs } => {
                    check(*control)?;
                    for &(a, b) in pairs {
                        check(a)?;
                        check(b)?;
                    }
                }
                Gate::X(t) | Gate::Hadamard(t) | Gate::S(t) | Gate::Sdg(t) => check(*t)?,
            }
        }
        Ok(())
    }

    /// Line-oriented text form: a `QROM <eta> <b> <ordering>` header then one gate per line.
    pub fn to_text(&self) -> String {
        let ord = match self.ordering {
            Ordering::GrayCode => "gray-code",
            Ordering::MagnitudeDescending => "magnitude-descending",
        };
        let mut out = format!("QROM {} {} {ord}\n", self.eta, self.b);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| QromError::Parse(String::new()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "QROM" {
            return Err(QromError::Parse(header.to_string()));
        }
        let eta = h[1].parse().map_err(|_| QromError::Parse(header.to_string()))?;
        let b = h[2].parse().map_err(|_| QromError::Parse(header.to_string()))?;
        let ordering = h[3].parse().map_err(|_| QromError::Parse(header.to_string()))?;
        let gates = lines.map(str::parse).collect::<Result<Vec<Gate>>>()?;
        Self::from_gates(eta, b, ordering, gates)
    }

    /// Runs every gate on a full basis state (address bits low, payload above).
    pub fn apply(&self, mut state: u128) -> Result<u128> {
        let eta = self.eta;
        let pmask = (1u128 << self.b) - 1;
        let bit = |s: u128, q: usize| (s >> q) & 1 == 1;
        for g in &self.gates {
            match g {
                Gate::Pfx { mask, .. } => {
                    let x = (state as u64) & ((1u64 << eta) - 1);
                    if wht::parity(x, *mask) {
                        state ^= pmask << eta;
                    }
                }
                Gate::Adder { k, .. } => state = add_payload(state, eta, pmask, *k),
                Gate::ControlledAdder { k, control, .. } => {
                    if bit(state, *control) {
                        state = add_payload(state, eta, pmask, *k);
                    }
                }
                Gate::Cnot { control, target } => {
                    if bit(state, *control) {
                        state ^= 1 << target;
                    }
                }
                Gate::CSwap { control, pairs } => {
                    if bit(state, *control) {
                        for &(a, b) in pairs {
                            if bit(state, a) != bit(state, b) {
                                state ^= (1 << a) | (1 << b);
                            }
                        }
                    }
                }
                Gate::X(t) => state ^= 1 << t,
                g => return Err(QromError::NonClassical(g.to_string())),
            }
        }
        Ok(state)
    }
}

fn add_payload(state: u128, eta: u32, pmask: u128, k: i64) -> u128 {
    let addr = state & ((1u128 << eta) - 1);
    let y = (state >> eta) & pmask;
    let y = (y as i128 + k as i128).rem_euclid(pmask as i128 + 1) as u128;
    addr | (y << eta)
}

impl fmt::Display for QromCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Classical action on `|x⟩|y⟩`; returns the new payload value.
pub fn simulate(circuit: &QromCircuit, x: u64, y: u64) -> Result<u64> {
    let eta = circuit.eta;
    if eta < 64 && x >> eta != 0 {
        return Err(QromError::Address { x, eta });
    }
    if circuit.b < 64 && y >> circuit.b != 0 {
        return Err(QromError::Payload { y, b: circuit.b });
    }
    let out = circuit.apply(x as u128 | ((y as u128) << eta))?;
    debug_assert_eq!(out as u64 & ((1u64 << eta) - 1), x, "address register must be restored");
    Ok((out >> eta) as u64)
}

/// A signed addition block `PFX_mask · body · PFX_mask`.
#[derive(Debug, Clone)]
struct Block {
    mask: u64,
    weight: u64,
    body: Vec<Gate>,
}

/// Inverse of the reflected Gray code `i ^ (i >> 1)`.
pub fn gray_rank(mut z: u64) -> u64 {
    let mut r = z;
    while z > 1 {
        z >>= 1;
        r ^= z;
    }
    r
}

fn order_blocks(blocks: &mut [Block], ordering: Ordering) {
    match ordering {
        Ordering::GrayCode => blocks.sort_by_key(|b| gray_rank(b.mask)),
        Ordering::MagnitudeDescending => {
            blocks.sort_by_key(|b| (std::cmp::Reverse(b.weight), b.mask))
        }
    }
}

fn emit(eta: u32, b: u32, mut blocks: Vec<Block>, ordering: Ordering) -> QromCircuit {
    order_blocks(&mut blocks, ordering);
    let mut gates = Vec::new();
    for blk in blocks {
        if blk.mask == 0 {
            gates.extend(blk.body);
        } else {
            gates.push(Gate::Pfx { mask: blk.mask, width: b });
            gates.extend(blk.body);
            gates.push(Gate::Pfx { mask: blk.mask, width: b });
        }
    }
    if ordering == Ordering::GrayCode {
        gates = merge_pfx(gates);
    }
    QromCircuit { eta, b, ordering, gates }
}

/// Fuses runs of adjacent fan-outs into one with the XOR of their masks.
pub fn merge_pfx(gates: Vec<Gate>) -> Vec<Gate> {
    let mut out: Vec<Gate> = Vec::with_capacity(gates.len());
    for g in gates {
        if let Gate::Pfx { mask, width } = g {
            if let Some(Gate::Pfx { mask: prev, .. }) = out.last() {
                let m = prev ^ mask;
                out.pop();
                if m != 0 {
                    out.push(Gate::Pfx { mask: m, width });
                }
                continue;
            }
        }
        out.push(g);
    }
    out
}

fn adder(k: i128, b: u32) -> Option<Gate> {
    let k = wrap_signed(k, b);
    (k != 0).then_some(Gate::Adder { k, width: b })
}

/// Builds `U_g = Π_z PFX_z A(ĝ(z)) PFX_z` for the retained coefficients.
pub fn synthesize(spec: &TruncatedSpectrum, ordering: Ordering) -> QromCircuit {
    let (eta, b) = (spec.eta(), spec.b());
    let blocks = spec
        .terms()
        .into_iter()
        .map(|(mask, k)| Block {
            mask,
            weight: k.unsigned_abs(),
            body: adder(k as i128, b).into_iter().collect(),
        })
        .collect();
    let mut c = emit(eta, b, blocks, ordering);
    c.ordering = ordering;
    c
}

/// How a matched pair `(z1, k), (z2, l)` is realized inside `PFX_{z1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairPlan {
    pub outer: (u64, i64),
    pub inner: (u64, i64),
    /// `true`: add `k - l`, then `2l` when `x·(z1⊕z2)` is even.
    /// `false`: add `k + l`, then `-2l` when it is odd.
    pub even_branch: bool,
    pub t_saving: u64,
}

impl PairPlan {
    fn body(&self, b: u32) -> Vec<Gate> {
        let (z1, k) = self.outer;
        let (z2, l) = self.inner;
        let (k, l) = (k as i128, l as i128);
        let (base, corr) = if self.even_branch { (k - l, 2 * l) } else { (k + l, -2 * l) };
        let rel = z1 ^ z2;
        let pivot = rel.trailing_zeros() as usize;
        let folds: Vec<Gate> = (0..64)
            .filter(|&i| i != pivot && (rel >> i) & 1 == 1)
            .map(|i| Gate::Cnot { control: i, target: pivot })
            .collect();
        let mut body: Vec<Gate> = adder(base, b).into_iter().collect();
        let corr = wrap_signed(corr, b);
        if corr != 0 {
            body.extend(folds.iter().cloned());
            if self.even_branch {
                body.push(Gate::X(pivot));
            }
            body.push(Gate::ControlledAdder { k: corr, width: b, control: pivot });
            if self.even_branch {
                body.push(Gate::X(pivot));
            }
            body.extend(folds.iter().rev().cloned());
        }
        body
    }
}

fn adder_t(k: i128, b: u32) -> u64 {
    match wrap_signed(k, b) {
        0 => 0,
        w => crate::cost::adder_t_count(w, b),
    }
}

fn cadder_t(k: i128, b: u32) -> u64 {
    match wrap_signed(k, b) {
        0 => 0,
        w => crate::cost::controlled_adder_t_count(w, b),
    }
}

/// Best realization of a pair, if it saves T gates and cannot add CNOTs.
pub fn plan_pair(a: (u64, i64), c: (u64, i64), b: u32) -> Option<PairPlan> {
    let rel = a.0 ^ c.0;
    if rel == 0 || 2 * (rel.count_ones() as u64 - 1) + 2 > b as u64 {
        return None;
    }
    let mut best: Option<PairPlan> = None;
    for (outer, inner) in [(a, c), (c, a)] {
        if inner.0 == 0 {
            continue;
        }
        let (k, l) = (outer.1 as i128, inner.1 as i128);
        let old = adder_t(k, b) + adder_t(l, b);
        for even_branch in [true, false] {
            let (base, corr) = if even_branch { (k - l, 2 * l) } else { (k + l, -2 * l) };
            let new = adder_t(base, b) + cadder_t(corr, b);
            if new < old {
                let cand = PairPlan { outer, inner, even_branch, t_saving: old - new };
                if best.is_none_or(|p| cand.t_saving > p.t_saving) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Replaces matched `±` and same-lsb coefficient pairs by one adder plus a
/// parity-controlled correction; the result is functionally identical.
pub fn pair_cancel(circuit: &QromCircuit, spec: &TruncatedSpectrum) -> Result<QromCircuit> {
    if circuit.eta != spec.eta() || circuit.b != spec.b() {
        return Err(QromError::Mismatch("widths differ".into()));
    }
    let b = spec.b();
    let terms = spec.terms();
    let mut plans = match_pairs(&terms, b);
    if plans.is_empty() {
        return Ok(circuit.clone());
    }
    let before = crate::cost::cost(circuit);
    loop {
        let out = build_with_pairs(circuit, &terms, &plans);
        let after = crate::cost::cost(&out);
        if after.t_count <= before.t_count && after.cnot_count <= before.cnot_count {
            return Ok(out);
        }
        plans.pop();
        if plans.is_empty() {
            return Ok(circuit.clone());
        }
    }
}

fn build_with_pairs(circuit: &QromCircuit, terms: &[(u64, i64)], plans: &[PairPlan]) -> QromCircuit {
    let b = circuit.b;
    let mut used = std::collections::HashSet::new();
    let mut blocks = Vec::new();
    for p in plans {
        used.insert(p.outer.0);
        used.insert(p.inner.0);
        blocks.push(Block {
            mask: p.outer.0,
            weight: p.outer.1.unsigned_abs().max(p.inner.1.unsigned_abs()),
            body: p.body(b),
        });
    }
    for &(mask, k) in terms {
        if !used.contains(&mask) {
            blocks.push(Block {
                mask,
                weight: k.unsigned_abs(),
                body: adder(k as i128, b).into_iter().collect(),
            });
        }
    }
    emit(circuit.eta, b, blocks, circuit.ordering)
}

/// Greedy disjoint matching: equal magnitudes first, then same-lsb pairs.
fn match_pairs(terms: &[(u64, i64)], b: u32) -> Vec<PairPlan> {
    use std::collections::{BTreeMap, HashSet};
    let mut taken: HashSet<u64> = HashSet::new();
    let mut plans = Vec::new();

    let mut by_mag: BTreeMap<u64, Vec<(u64, i64)>> = BTreeMap::new();
    for &t in terms {
        by_mag.entry(t.1.unsigned_abs()).or_default().push(t);
    }
    for group in by_mag.values().rev() {
        greedy_within(group, b, &mut taken, &mut plans);
    }

    let mut by_lsb: BTreeMap<u32, Vec<(u64, i64)>> = BTreeMap::new();
    for &t in terms.iter().filter(|t| !taken.contains(&t.0)) {
        by_lsb.entry(t.1.trailing_zeros()).or_default().push(t);
    }
    for (&lsb, group) in &by_lsb {
        if group.len() <= 256 {
            greedy_within(group, b, &mut taken, &mut plans);
        } else {
            // Neighbours in this order agree on the most low-order bits of ±k.
            let mut g = group.clone();
            g.sort_by_key(|&(z, k)| {
                let u = (k >> lsb) as i128;
                let canon = if u.rem_euclid(4) == 1 { u } else { -u };
                (((canon as u64) >> 1).reverse_bits(), z)
            });
            for w in g.chunks_exact(2) {
                if let Some(p) = plan_pair(w[0], w[1], b) {
                    taken.insert(w[0].0);
                    taken.insert(w[1].0);
                    plans.push(p);
                }
            }
        }
    }
    plans
}

fn greedy_within(
    group: &[(u64, i64)],
    b: u32,
    taken: &mut std::collections::HashSet<u64>,
    plans: &mut Vec<PairPlan>,
) {
    let mut cands = Vec::new();
    for i in 0..group.len() {
        for j in i + 1..group.len() {
            if let Some(p) = plan_pair(group[i], group[j], b) {
                cands.push(p);
            }
        }
    }
    cands.sort_by_key(|p| {
        let (lo, hi) = (p.outer.0.min(p.inner.0), p.outer.0.max(p.inner.0));
        (std::cmp::Reverse(p.t_saving), lo, hi)
    });
    for p in cands {
        if !taken.contains(&p.outer.0) && !taken.contains(&p.inner.0) {
            taken.insert(p.outer.0);
            taken.insert(p.inner.0);
            plans.push(p);
        }
    }
}
