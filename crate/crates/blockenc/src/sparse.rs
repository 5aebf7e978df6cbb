use std::io::Read;

use nalgebra::DMatrix;

use crate::BlockEncodingError;

/// How the column-index oracle `O_F` is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnOracle {
    /// Table lookup of `f(j, l)`, completed to a permutation of each row.
    Generic,
    /// Block-diagonal structure with `2^s`-wide dense blocks: CNOTs copy the
    /// block index of `j` into the high bits of `l`.
    BlockCopy { block_bits: u32 },
}

/// Row-wise sparse access: `row[j][l] = (f(j, l), A_{j f(j,l)})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOracle {
    n: usize,
    rho: usize,
    rows: Vec<Vec<(usize, f64)>>,
    oracle: ColumnOracle,
}

impl SparseOracle {
    /// Rows list their nonzeros in the order `l = 0, 1, …`; `rho` is the declared bound.
    pub fn new(n: usize, rho: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self, BlockEncodingError> {
        if n == 0 || rows.len() != n {
            return Err(BlockEncodingError::Shape(format!("{} rows for dimension {n}", rows.len())));
        }
        if rho == 0 || rho > n.next_power_of_two() {
            return Err(BlockEncodingError::Shape(format!("sparsity {rho} for dimension {n}")));
        }
        for (j, r) in rows.iter().enumerate() {
            if r.len() > rho {
                return Err(BlockEncodingError::Shape(format!("row {j} has {} > {rho} entries", r.len())));
            }
            for (i, &(c, v)) in r.iter().enumerate() {
                if c >= n || !v.is_finite() {
                    return Err(BlockEncodingError::Shape(format!("row {j}: bad entry ({c}, {v})")));
                }
                if r[..i].iter().any(|&(c2, _)| c2 == c) {
                    return Err(BlockEncodingError::Shape(format!("row {j}: column {c} repeated")));
                }
            }
        }
        Ok(Self { n, rho, rows, oracle: ColumnOracle::Generic })
    }

    /// Nonzero pattern of `a` in ascending column order; `rho` is the widest row.
    pub fn from_dense(a: &DMatrix<f64>) -> Result<Self, BlockEncodingError> {
        if a.nrows() != a.ncols() {
            return Err(BlockEncodingError::Shape("matrix is not square".into()));
        }
        let rows: Vec<Vec<(usize, f64)>> = (0..a.nrows())
            .map(|j| (0..a.ncols()).filter(|&k| a[(j, k)] != 0.0).map(|k| (k, a[(j, k)])).collect())
            .collect();
        let rho = rows.iter().map(Vec::len).max().unwrap_or(0).max(1);
        Self::new(a.nrows(), rho, rows)
    }

    /// `⊕_m M^(m)` with equal `2^s × 2^s` blocks, using the CNOT-copy column oracle.
    /// Every block position counts as structural, zero or not.
    pub fn block_diagonal(blocks: &[DMatrix<f64>]) -> Result<Self, BlockEncodingError> {
        let w = blocks.first().map(|b| b.nrows()).unwrap_or(0);
        if w == 0 || !w.is_power_of_two() || !blocks.len().is_power_of_two() {
            return Err(BlockEncodingError::Shape("blocks must be 2^s wide, 2^t in number".into()));
        }
        if blocks.iter().any(|b| b.nrows() != w || b.ncols() != w) {
            return Err(BlockEncodingError::Shape("blocks differ in size".into()));
        }
        let n = w * blocks.len();
        let rows = (0..n)
            .map(|j| {
                let (m, r) = (j / w, j % w);
                (0..w).map(|l| (m * w + l, blocks[m][(r, l)])).collect()
            })
            .collect();
        let mut s = Self::new(n, w, rows)?;
        s.oracle = ColumnOracle::BlockCopy { block_bits: w.trailing_zeros() };
        Ok(s)
    }

    /// Same entries, table-driven column oracle.
    pub fn with_generic_oracle(mut self) -> Self {
        self.oracle = ColumnOracle::Generic;
        self
    }

    /// Reads `row,col,value` lines (an optional header is skipped).
    pub fn from_coo_csv<R: Read>(reader: R, n: usize, rho: Option<usize>) -> Result<Self, BlockEncodingError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
        let mut rows = vec![Vec::new(); n];
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| BlockEncodingError::Parse { line: i + 1, msg: e.to_string() })?;
            if i == 0 && rec.get(0).is_some_and(|s| s.parse::<usize>().is_err()) {
                continue;
            }
            let field = |k: usize| {
                rec.get(k).ok_or_else(|| BlockEncodingError::Parse { line: i + 1, msg: "expected 3 fields".into() })
            };
            let bad = |m: String| BlockEncodingError::Parse { line: i + 1, msg: m };
            let r: usize = field(0)?.parse().map_err(|e| bad(format!("{e}")))?;
            let c: usize = field(1)?.parse().map_err(|e| bad(format!("{e}")))?;
            let v: f64 = field(2)?.parse().map_err(|e| bad(format!("{e}")))?;
            if r >= n {
                return Err(bad(format!("row {r} outside dimension {n}")));
            }
            rows[r].push((c, v));
        }
        for r in &mut rows {
            r.sort_by_key(|e| e.0);
        }
        let rho = rho.unwrap_or_else(|| rows.iter().map(Vec::len).max().unwrap_or(0).max(1));
        Self::new(n, rho, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn oracle(&self) -> ColumnOracle {
        self.oracle
    }

    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }

    /// `f(j, l)` for `l` below the row's entry count.
    pub fn column(&self, j: usize, l: usize) -> Option<usize> {
        self.rows.get(j)?.get(l).map(|e| e.0)
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.rows
            .get(j)
            .and_then(|r| r.iter().find(|e| e.0 == k))
            .map_or(0.0, |e| e.1)
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0f64, |m, e| m.max(e.1.abs()))
    }

    /// Address width `⌈log2 n⌉` (at least one qubit).
    pub fn eta(&self) -> u32 {
        self.n.next_power_of_two().trailing_zeros().max(1)
    }

    /// The operator, zero-padded to `2^η`.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = 1usize << self.eta();
        let mut m = DMatrix::zeros(dim, dim);
        for (j, r) in self.rows.iter().enumerate() {
            for &(k, v) in r {
                m[(j, k)] = v;
            }
        }
        m
    }

    /// `k` appears in row `j` whenever `j` appears in row `k`, with equal values.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows.iter().enumerate().all(|(j, r)| {
            r.iter().all(|&(k, v)| {
                self.rows[k].iter().any(|e| e.0 == j) && (self.get(k, j) - v).abs() <= tol
            })
        })
    }

    /// Row `j` of `O_F` over the full `2^η` range of `l`: listed columns first,
    /// then the unused columns in ascending order.
    pub fn column_table(&self, j: usize) -> Vec<usize> {
        let dim = 1usize << self.eta();
        match self.oracle {
            ColumnOracle::BlockCopy { block_bits } => {
                let high = (dim - 1) & !((1usize << block_bits) - 1);
                (0..dim).map(|l| l ^ (j & high)).collect()
            }
            ColumnOracle::Generic => {
                let mut used = vec![false; dim];
                let mut t: Vec<usize> = self.rows.get(j).map_or(Vec::new(), |r| r.iter().map(|e| e.0).collect());
                for &c in &t {
                    used[c] = true;
                }
                t.extend((0..dim).filter(|&c| !used[c]));
                t
            }
        }
    }
}
