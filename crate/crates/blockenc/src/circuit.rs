//! Unitaries as products of structured factors.
//!
//! Every factor acts on a listed subset of qubits and, optionally, only on
//! the basis states whose remaining qubits match a fixed pattern. States are
//! applied in batches: a buffer of `2^Q` rows times `cols` columns, row-major.

use nalgebra::DMatrix;

use crate::BlockEncodingError;

/// Total qubits up to which [`Circuit::to_dense`] is allowed.
pub const DENSE_LIMIT: u32 = 12;

/// Applies a factor only where `u & mask == value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Condition {
    pub mask: u64,
    pub value: u64,
}

impl Condition {
    pub fn always() -> Self {
        Self::default()
    }

    /// The register at `qubits` (low qubit first) holds `value`.
    pub fn register(qubits: &[u32], value: u64) -> Self {
        let mut c = Self::default();
        for (i, &q) in qubits.iter().enumerate() {
            c.mask |= 1 << q;
            c.value |= ((value >> i) & 1) << q;
        }
        c
    }

    fn holds(&self, u: usize) -> bool {
        (u as u64) & self.mask == self.value
    }

    fn and(self, other: Self) -> Self {
        Self { mask: self.mask | other.mask, value: self.value | other.value }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    /// `|l⟩ ↦ sign[l] |perm[l]⟩` on the local register.
    Perm { perm: Vec<u32>, sign: Vec<f64> },
    /// A 2×2 real block on `qubits[0]`, chosen by the value of `qubits[1..]`.
    /// Blocks are row-major `[m00, m01, m10, m11]`.
    Rotation { blocks: Vec<[f64; 4]> },
    /// Dense real matrix on the local register.
    Dense(DMatrix<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub op: Op,
    pub qubits: Vec<u32>,
    pub when: Condition,
}

impl Factor {
    pub fn perm(qubits: Vec<u32>, perm: Vec<u32>) -> Self {
        let sign = vec![1.0; perm.len()];
        Self { op: Op::Perm { perm, sign }, qubits, when: Condition::always() }
    }

    pub fn signed_perm(qubits: Vec<u32>, perm: Vec<u32>, sign: Vec<f64>) -> Self {
        Self { op: Op::Perm { perm, sign }, qubits, when: Condition::always() }
    }

    pub fn rotation(target: u32, selectors: &[u32], blocks: Vec<[f64; 4]>) -> Self {
        let mut qubits = vec![target];
        qubits.extend_from_slice(selectors);
        Self { op: Op::Rotation { blocks }, qubits, when: Condition::always() }
    }

    pub fn dense(qubits: Vec<u32>, m: DMatrix<f64>) -> Self {
        Self { op: Op::Dense(m), qubits, when: Condition::always() }
    }

    pub fn when(mut self, c: Condition) -> Self {
        self.when = self.when.and(c);
        self
    }

    fn local_mask(&self) -> u64 {
        self.qubits.iter().fold(0, |m, &q| m | 1 << q)
    }

    fn validate(&self, total: u32) -> Result<(), BlockEncodingError> {
        let k = self.qubits.len() as u32;
        let lm = self.local_mask();
        if self.qubits.iter().any(|&q| q >= total) || lm.count_ones() != k {
            return Err(BlockEncodingError::Circuit("factor qubits out of range or repeated".into()));
        }
        if self.when.mask & lm != 0 || self.when.mask >> total != 0 {
            return Err(BlockEncodingError::Circuit("condition overlaps the factor's own qubits".into()));
        }
        let ok = match &self.op {
            Op::Perm { perm, sign } => perm.len() == 1 << k && sign.len() == perm.len(),
            Op::Rotation { blocks } => k >= 1 && blocks.len() == 1 << (k - 1),
            Op::Dense(m) => m.nrows() == 1 << k && m.ncols() == 1 << k,
        };
        if !ok {
            return Err(BlockEncodingError::Circuit("factor table size does not match its qubits".into()));
        }
        Ok(())
    }

    fn adjoint(&self) -> Self {
        let op = match &self.op {
            Op::Perm { perm, sign } => {
                let mut inv = vec![0u32; perm.len()];
                let mut s = vec![1.0; perm.len()];
                for (l, &p) in perm.iter().enumerate() {
                    inv[p as usize] = l as u32;
                    s[p as usize] = sign[l];
                }
                Op::Perm { perm: inv, sign: s }
            }
            Op::Rotation { blocks } => Op::Rotation {
                blocks: blocks.iter().map(|b| [b[0], b[2], b[1], b[3]]).collect(),
            },
            Op::Dense(m) => Op::Dense(m.transpose()),
        };
        Self { op, qubits: self.qubits.clone(), when: self.when }
    }

    /// `max |F†F - I|` over the factor's local blocks.
    pub fn unitarity_deviation(&self) -> f64 {
        match &self.op {
            Op::Perm { perm, sign } => {
                let mut seen = vec![false; perm.len()];
                for &p in perm {
                    if (p as usize) >= perm.len() || std::mem::replace(&mut seen[p as usize], true) {
                        return f64::INFINITY;
                    }
                }
                sign.iter().fold(0.0f64, |m, s| m.max((s.abs() - 1.0).abs()))
            }
            Op::Rotation { blocks } => blocks.iter().fold(0.0f64, |m, b| {
                let g00 = b[0] * b[0] + b[2] * b[2] - 1.0;
                let g11 = b[1] * b[1] + b[3] * b[3] - 1.0;
                let g01 = b[0] * b[1] + b[2] * b[3];
                m.max(g00.abs()).max(g11.abs()).max(g01.abs())
            }),
            Op::Dense(m) => {
                let n = m.nrows();
                (m.transpose() * m - DMatrix::<f64>::identity(n, n)).amax()
            }
        }
    }

    fn apply(&self, input: &[f64], out: &mut [f64], cols: usize) {
        let dim = input.len() / cols;
        let offs = offsets(&self.qubits);
        let lm = self.local_mask() as usize;
        match &self.op {
            Op::Perm { perm, sign } => {
                for u in 0..dim {
                    let src = &input[u * cols..(u + 1) * cols];
                    if !self.when.holds(u) {
                        out[u * cols..(u + 1) * cols].copy_from_slice(src);
                        continue;
                    }
                    let l = gather(u, &self.qubits);
                    let v = (u & !lm) | offs[perm[l] as usize];
                    let s = sign[l];
                    for (o, &x) in out[v * cols..(v + 1) * cols].iter_mut().zip(src) {
                        *o = s * x;
                    }
                }
            }
            Op::Rotation { blocks } => {
                let tbit = 1usize << self.qubits[0];
                let sel = &self.qubits[1..];
                for u in 0..dim {
                    if u & tbit != 0 {
                        continue;
                    }
                    let (lo, hi) = (u * cols, (u | tbit) * cols);
                    if !self.when.holds(u) {
                        out[lo..lo + cols].copy_from_slice(&input[lo..lo + cols]);
                        out[hi..hi + cols].copy_from_slice(&input[hi..hi + cols]);
                        continue;
                    }
                    let b = blocks[gather(u, sel)];
                    for c in 0..cols {
                        let (x0, x1) = (input[lo + c], input[hi + c]);
                        out[lo + c] = b[0] * x0 + b[1] * x1;
                        out[hi + c] = b[2] * x0 + b[3] * x1;
                    }
                }
            }
            Op::Dense(m) => {
                let k = offs.len();
                let mut buf = vec![0.0; k * cols];
                for base in 0..dim {
                    if base & lm != 0 {
                        continue;
                    }
                    if !self.when.holds(base) {
                        for &o in &offs {
                            let r = (base | o) * cols;
                            out[r..r + cols].copy_from_slice(&input[r..r + cols]);
                        }
                        continue;
                    }
                    buf.iter_mut().for_each(|x| *x = 0.0);
                    for i in 0..k {
                        for (j, &oj) in offs.iter().enumerate() {
                            let mij = m[(i, j)];
                            if mij == 0.0 {
                                continue;
                            }
                            let src = (base | oj) * cols;
                            for c in 0..cols {
                                buf[i * cols + c] += mij * input[src + c];
                            }
                        }
                    }
                    for (i, &oi) in offs.iter().enumerate() {
                        let r = (base | oi) * cols;
                        out[r..r + cols].copy_from_slice(&buf[i * cols..(i + 1) * cols]);
                    }
                }
            }
        }
    }
}

fn gather(u: usize, qubits: &[u32]) -> usize {
    qubits.iter().enumerate().fold(0, |l, (i, &q)| l | ((u >> q) & 1) << i)
}

/// Full-register offsets of every local basis state.
fn offsets(qubits: &[u32]) -> Vec<usize> {
    (0..1usize << qubits.len())
        .map(|l| qubits.iter().enumerate().fold(0, |u, (i, &q)| u | ((l >> i) & 1) << q))
        .collect()
}

/// Householder reflection whose first column is `v` (unit norm, real).
pub fn state_preparation(v: &[f64]) -> DMatrix<f64> {
    let n = v.len();
    let mut w: Vec<f64> = v.to_vec();
    w[0] -= 1.0;
    let norm2: f64 = w.iter().map(|x| x * x).sum();
    if norm2 < 1e-30 {
        return DMatrix::identity(n, n);
    }
    DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)) - 2.0 * w[i] * w[j] / norm2)
}

/// Width `k` register swap: `|a⟩|b⟩ ↦ |b⟩|a⟩` on qubits `lo..lo+k` and `lo+k..lo+2k`.
pub fn register_swap(lo: u32, k: u32) -> Factor {
    let mask = (1u32 << k) - 1;
    let perm = (0..1u32 << (2 * k)).map(|l| (l >> k) | ((l & mask) << k)).collect();
    Factor::perm((lo..lo + 2 * k).collect(), perm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: u32,
    factors: Vec<Factor>,
}

impl Circuit {
    pub fn new(qubits: u32) -> Self {
        Self { qubits, factors: Vec::new() }
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Appends a factor; it acts after everything already present.
    pub fn push(&mut self, f: Factor) -> Result<(), BlockEncodingError> {
        f.validate(self.qubits)?;
        self.factors.push(f);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<(), BlockEncodingError> {
        for f in &other.factors {
            self.push(f.clone())?;
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self { qubits: self.qubits, factors: self.factors.iter().rev().map(Factor::adjoint).collect() }
    }

    /// Relabels qubit `i` as `map[i]` in a `qubits`-wide register and adds a condition.
    pub fn embed(&self, map: &[u32], qubits: u32, when: Condition) -> Result<Self, BlockEncodingError> {
        let remap_mask = |m: u64| {
            (0..64).filter(|&i| m >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << map[i as usize])
        };
        let mut out = Circuit::new(qubits);
        for f in &self.factors {
            let g = Factor {
                op: f.op.clone(),
                qubits: f.qubits.iter().map(|&q| map[q as usize]).collect(),
                when: Condition { mask: remap_mask(f.when.mask), value: remap_mask(f.when.value) }
                    .and(when),
            };
            out.push(g)?;
        }
        Ok(out)
    }

    /// Applies the circuit to a batch of `cols` column vectors stored row-major.
    pub fn apply_batch(&self, state: Vec<f64>, cols: usize) -> Vec<f64> {
        assert_eq!(state.len(), self.dim() * cols, "state size");
        let mut cur = state;
        let mut next = vec![0.0; cur.len()];
        for f in &self.factors {
            f.apply(&cur, &mut next, cols);
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    pub fn apply(&self, state: Vec<f64>) -> Vec<f64> {
        self.apply_batch(state, 1)
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>, BlockEncodingError> {
        if self.qubits > DENSE_LIMIT {
            return Err(BlockEncodingError::TooLarge(self.qubits));
        }
        let n = self.dim();
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        let out = self.apply_batch(id, n);
        Ok(DMatrix::from_row_slice(n, n, &out))
    }

    /// First-order bound on `‖U†U - I‖₂`: the sum over factors of each local
    /// deviation scaled by the local dimension.
    pub fn unitarity_bound(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| {
                let scale = match &f.op {
                    Op::Perm { .. } => 1.0,
                    Op::Rotation { .. } => 2.0,
                    Op::Dense(m) => m.nrows() as f64,
                };
                scale * f.unitarity_deviation()
            })
            .sum()
    }

    /// `max |U†U - I|` from the dense matrix when small enough, else the factor bound.
    pub fn unitarity_deviation(&self) -> f64 {
        match self.to_dense() {
            Ok(u) if self.qubits <= 10 => {
                let n = u.nrows();
                (u.transpose() * &u - DMatrix::<f64>::identity(n, n)).amax()
            }
            _ => self.unitarity_bound(),
        }
    }
}
