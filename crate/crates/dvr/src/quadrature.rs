use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::DvrError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureKind {
    /// Weight `exp(-x²)` on the real line.
    Hermite,
    /// Weight `1` on `[-1, 1]`.
    Legendre,
}

impl std::str::FromStr for QuadratureKind {
    type Err = DvrError;

    fn from_str(s: &str) -> Result<Self, DvrError> {
        match s.to_ascii_lowercase().as_str() {
            "hermite" => Ok(Self::Hermite),
            "legendre" => Ok(Self::Legendre),
            _ => Err(DvrError::Kind(s.to_string())),
        }
    }
}

impl QuadratureKind {
    /// `∫ w(x) dx`.
    pub fn mu0(&self) -> f64 {
        match self {
            Self::Hermite => std::f64::consts::PI.sqrt(),
            Self::Legendre => 2.0,
        }
    }

    /// Diagonal `a_j` of the Jacobi matrix for the orthonormal family.
    pub fn alpha(&self, _j: usize) -> f64 {
        0.0
    }

    /// Off-diagonal `β_j` coupling degrees `j - 1` and `j` (`β_0 = 0`).
    pub fn beta(&self, j: usize) -> f64 {
        if j == 0 {
            return 0.0;
        }
        let j = j as f64;
        match self {
            Self::Hermite => (j / 2.0).sqrt(),
            Self::Legendre => j / (4.0 * j * j - 1.0).sqrt(),
        }
    }

    /// Normalizer `Ñ_j` turning the classical `H_j` / `P_j` into orthonormal polynomials.
    pub fn normalizer(&self, j: usize) -> f64 {
        match self {
            Self::Hermite => {
                let mut h = std::f64::consts::PI.sqrt();
                for i in 1..=j {
                    h *= 2.0 * i as f64;
                }
                1.0 / h.sqrt()
            }
            Self::Legendre => ((2 * j + 1) as f64 / 2.0).sqrt(),
        }
    }

    /// `∫ x^k w(x) dx`.
    pub fn moment(&self, k: u32) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        match self {
            Self::Legendre => 2.0 / (k as f64 + 1.0),
            Self::Hermite => {
                // Γ((k+1)/2) = (k-1)!! √π / 2^(k/2)
                let mut g = std::f64::consts::PI.sqrt();
                let mut i = 1;
                while i < k {
                    g *= i as f64 / 2.0;
                    i += 2;
                }
                g
            }
        }
    }
}

/// Harmonic-oscillator placement of a Hermite grid: `r = r0 + q / √(μω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoScaling {
    pub mass: f64,
    pub omega: f64,
    pub r0: f64,
}

impl HoScaling {
    pub fn alpha(&self) -> f64 {
        (self.mass * self.omega).sqrt()
    }

    pub fn to_physical(&self, q: f64) -> f64 {
        self.r0 + q / self.alpha()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaling: Option<HoScaling>,
}

impl Quadrature {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes mapped through the oscillator scaling when present.
    pub fn physical_nodes(&self) -> Vec<f64> {
        match self.scaling {
            Some(s) => self.nodes.iter().map(|&q| s.to_physical(q)).collect(),
            None => self.nodes.clone(),
        }
    }

    pub fn with_scaling(mut self, s: HoScaling) -> Result<Self, DvrError> {
        if self.kind != QuadratureKind::Hermite {
            return Err(DvrError::Kind("oscillator scaling needs a Hermite grid".into()));
        }
        if !(s.mass > 0.0 && s.omega > 0.0) {
            return Err(DvrError::Scaling);
        }
        self.scaling = Some(s);
        Ok(self)
    }

    /// `Σ_k w_k g(q_k)`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * g(x)).sum()
    }
}

/// Orthonormal `p_0..p_{m-1}` at `x` via the three-term recurrence.
pub fn orthonormal_values(kind: QuadratureKind, m: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(m);
    if m == 0 {
        return p;
    }
    p.push(1.0 / kind.mu0().sqrt());
    for j in 0..m - 1 {
        let prev = if j == 0 { 0.0 } else { p[j - 1] };
        let next = ((x - kind.alpha(j)) * p[j] - kind.beta(j) * prev) / kind.beta(j + 1);
        p.push(next);
    }
    p
}

/// Nodes from the Jacobi-matrix eigenvalues; weights `1 / Σ_j p_j(q_k)²`.
pub fn gauss_quadrature(kind: QuadratureKind, n: usize) -> Result<Quadrature, DvrError> {
    if n == 0 {
        return Err(DvrError::Size(n));
    }
    let jac = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            kind.alpha(i)
        } else if i + 1 == j {
            kind.beta(j)
        } else if j + 1 == i {
            kind.beta(i)
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    // Both families are even: mirror the spectrum exactly.
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| 1.0 / orthonormal_values(kind, n, x).iter().map(|p| p * p).sum::<f64>())
        .collect();
    Ok(Quadrature { kind, nodes, weights, scaling: None })
}
