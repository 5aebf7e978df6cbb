use crate::BlockEncodingError;

/// Column-index function of `M = A⊗I⊗I + I⊗B⊗I + I⊗I⊗C` for dense `A`, `B`, `C`.
///
/// Row `(0,0,0)` lists `(μ,0,0)` for `μ < N_a`, then `(0,b',0)` for `b' ≥ 1`,
/// then `(0,0,c')` for `c' ≥ 1`. Other rows use the `(a,0,0)` list with the
/// first group's `a` replaced by `μ`, shifted by `b mod N_b` and `c mod N_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumTensorIndex {
    pub na: usize,
    pub nb: usize,
    pub nc: usize,
}

/// Rows and columns flatten as `(a·N_b + b)·N_c + c`.
pub fn of_sum_tensor(na: usize, nb: usize, nc: usize) -> Result<SumTensorIndex, BlockEncodingError> {
    if na == 0 || nb == 0 || nc == 0 {
        return Err(BlockEncodingError::Shape("tensor factor of size zero".into()));
    }
    Ok(SumTensorIndex { na, nb, nc })
}

impl SumTensorIndex {
    /// Nonzeros per row: `N_a + N_b + N_c - 2`.
    pub fn sparsity(&self) -> usize {
        self.na + self.nb + self.nc - 2
    }

    pub fn dim(&self) -> usize {
        self.na * self.nb * self.nc
    }

    pub fn flatten(&self, (a, b, c): (usize, usize, usize)) -> usize {
        (a * self.nb + b) * self.nc + c
    }

    pub fn unflatten(&self, j: usize) -> (usize, usize, usize) {
        (j / (self.nb * self.nc), (j / self.nc) % self.nb, j % self.nc)
    }

    /// `C_1(a, μ)`: the `μ`-th nonzero of row `(a, 0, 0)`.
    pub fn c1(&self, a: usize, mu: usize) -> Result<(usize, usize, usize), BlockEncodingError> {
        let (na, nb) = (self.na, self.nb);
        if mu >= self.sparsity() || a >= na {
            return Err(BlockEncodingError::Index { mu, limit: self.sparsity() });
        }
        Ok(if mu < na {
            (mu, 0, 0)
        } else if mu < na + nb - 1 {
            (a, mu - na + 1, 0)
        } else {
            (a, 0, mu + 2 - na - nb)
        })
    }

    /// `C(a, b, c, μ) = S_c S_b C_1(a, μ)`.
    pub fn column(&self, row: (usize, usize, usize), mu: usize) -> Result<(usize, usize, usize), BlockEncodingError> {
        let (a, b, c) = row;
        if b >= self.nb || c >= self.nc {
            return Err(BlockEncodingError::Index { mu, limit: self.sparsity() });
        }
        let (a1, b1, c1) = self.c1(a, mu)?;
        Ok((a1, (b1 + b) % self.nb, (c1 + c) % self.nc))
    }
}

/// Neighbour map for a `J_x`/`J_y`-style ladder on `j = 0..=2J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularIndex {
    pub two_j: usize,
}

/// Fails for `J = 0`, where the ladder has no neighbour to point at.
pub fn of_angular_momentum(two_j: usize) -> Result<AngularIndex, BlockEncodingError> {
    if two_j == 0 {
        return Err(BlockEncodingError::Shape("ladder needs J > 0".into()));
    }
    Ok(AngularIndex { two_j })
}

impl AngularIndex {
    /// `μ = 0` points down (`j - 1`, reflected to `j + 1` at `j = 0`);
    /// `μ = 1` points up (`j + 1`, reflected to `j - 1` at `j = 2J`).
    pub fn column(&self, j: usize, mu: usize) -> Result<usize, BlockEncodingError> {
        if j > self.two_j || mu > 1 {
            return Err(BlockEncodingError::Index { mu, limit: 2 });
        }
        Ok(match mu {
            0 if j > 0 => j - 1,
            0 => j + 1,
            _ if j < self.two_j => j + 1,
            _ => j - 1,
        })
    }
}
