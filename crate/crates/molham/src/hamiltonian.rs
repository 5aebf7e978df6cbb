//! Dense FBR and DVR Hamiltonians for the toy molecules.
//!
//! Radial modes use oscillator functions, the bend uses Legendre functions
//! on an affine window. Kinetic factors are exact in the basis; every
//! multiplicative function goes through the quadrature, so the DVR matrix is
//! `T H_FBR Tᵀ` with `T = T_1 ⊗ T_2 ⊗ T_3`. Product indices flatten as
//! `(a·n_2 + b)·n_3 + c`.

use dvr::{build_transform, gauss_quadrature, DvrTransform, QuadratureKind};
use nalgebra::{DMatrix, DMatrixView, DMatrixViewMut, SymmetricEigen};

use crate::spec::{PesKind, Shape, ToyMoleculeSpec};
use crate::units::{cm_to_hartree, da_to_me};
use crate::MolhamError;

/// Largest product basis assembled densely.
pub const DENSE_DIM_LIMIT: usize = 4096;

/// One coordinate: its transform, physical grid and exact derivative.
#[derive(Debug, Clone)]
pub struct ModeBasis {
    pub transform: DvrTransform,
    /// Physical grid points (bohr or radians).
    pub points: Vec<f64>,
    /// `⟨φ_a| d/dq |φ_b⟩` in the basis.
    pub deriv: DMatrix<f64>,
    /// `⟨φ_a| -d²/dq² |φ_b⟩`, exact.
    pub kinetic: DMatrix<f64>,
}

impl ModeBasis {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `T M Tᵀ`.
    pub fn to_dvr(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let t = &self.transform.matrix;
        t * m * t.transpose()
    }

    /// `Tᵀ diag(f) T`.
    pub fn fbr_of(&self, f: &[f64]) -> DMatrix<f64> {
        dvr::fbr_potential(&self.transform, f).expect("grid-sized samples")
    }
}

/// Oscillator derivative with scale `α`: `d/dq φ_k = α(√(k/2) φ_{k-1} - √((k+1)/2) φ_{k+1})`.
pub fn ho_derivative(n: usize, alpha: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |m, k| {
        if m + 1 == k {
            alpha * (k as f64 / 2.0).sqrt()
        } else if m == k + 1 {
            -alpha * (m as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    })
}

/// Orthonormal Legendre derivative on `[-1, 1]`: `√((2a+1)(2b+1))` for `a < b`, `a + b` odd.
pub fn legendre_derivative(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |a, b| {
        if a < b && (a + b) % 2 == 1 {
            (((2 * a + 1) * (2 * b + 1)) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `-d²` truncated after forming the product one size up, so no edge term is lost.
fn exact_kinetic(n: usize, deriv_plus: impl Fn(usize) -> DMatrix<f64>) -> DMatrix<f64> {
    let d = deriv_plus(n + 1);
    let k = d.transpose() * &d;
    k.view((0, 0), (n, n)).into_owned()
}

pub fn radial_basis(spec: &ToyMoleculeSpec, i: usize) -> Result<ModeBasis, MolhamError> {
    let s = spec.scaling(i);
    let q = gauss_quadrature(QuadratureKind::Hermite, spec.radial[i].n)?.with_scaling(s)?;
    let points = q.physical_nodes();
    let t = build_transform(&q);
    let alpha = s.alpha();
    let n = points.len();
    Ok(ModeBasis {
        transform: t,
        points,
        deriv: ho_derivative(n, alpha),
        kinetic: exact_kinetic(n, |m| ho_derivative(m, alpha)),
    })
}

pub fn angular_basis(spec: &ToyMoleculeSpec) -> Result<ModeBasis, MolhamError> {
    let a = spec.angular.as_ref().ok_or_else(|| MolhamError::Shape("no bending mode".into()))?;
    let q = gauss_quadrature(QuadratureKind::Legendre, a.n)?;
    let h = a.half_width();
    let points = q.nodes.iter().map(|&x| a.theta0_rad() + h * x).collect();
    let t = build_transform(&q);
    let deriv = legendre_derivative(a.n) / h;
    let kinetic = deriv.transpose() * &deriv;
    Ok(ModeBasis { transform: t, points, deriv, kinetic })
}

pub fn mode_bases(spec: &ToyMoleculeSpec) -> Result<Vec<ModeBasis>, MolhamError> {
    let mut v = (0..spec.radial.len())
        .map(|i| radial_basis(spec, i))
        .collect::<Result<Vec<_>, _>>()?;
    if spec.angular.is_some() {
        v.push(angular_basis(spec)?);
    }
    Ok(v)
}

/// Effective bending prefactor at equilibrium, `1/(2μ1 r1²) + 1/(2μ2 r2²)`.
pub fn bend_metric_eq(spec: &ToyMoleculeSpec) -> f64 {
    spec.radial
        .iter()
        .map(|r| 1.0 / (2.0 * da_to_me(r.mass) * r.r0 * r.r0))
        .sum()
}

/// Potential pieces, all in hartree.
#[derive(Debug, Clone)]
pub struct Pes<'a> {
    spec: &'a ToyMoleculeSpec,
}

impl<'a> Pes<'a> {
    pub fn new(spec: &'a ToyMoleculeSpec) -> Self {
        Self { spec }
    }

    pub fn radial(&self, i: usize, r: f64) -> f64 {
        let m = &self.spec.radial[i];
        let mu = da_to_me(m.mass);
        let w = cm_to_hartree(m.omega);
        let x = r - m.r0;
        match self.spec.pes.kind {
            PesKind::Harmonic => 0.5 * mu * w * w * x * x,
            PesKind::Morse => {
                let de = cm_to_hartree(self.spec.pes.depth.unwrap_or(0.0));
                let a = w * (mu / (2.0 * de)).sqrt();
                let e = 1.0 - (-a * x).exp();
                de * e * e
            }
        }
    }

    pub fn bend(&self, theta: f64) -> f64 {
        let a = self.spec.angular.as_ref().expect("bending mode");
        let w = cm_to_hartree(a.omega);
        let k = w * w / (2.0 * bend_metric_eq(self.spec));
        let x = theta - a.theta0_rad();
        0.5 * k * x * x
    }

    pub fn coupling(&self, r1: f64, r2: f64) -> f64 {
        let f = cm_to_hartree(self.spec.pes.bilinear);
        f * (r1 - self.spec.radial[0].r0) * (r2 - self.spec.radial[1].r0)
    }

    /// Full surface at one product-grid point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut v: f64 = x.iter().take(self.spec.radial.len()).enumerate().map(|(i, &r)| self.radial(i, r)).sum();
        if self.spec.radial.len() == 2 {
            v += self.coupling(x[0], x[1]);
        }
        if self.spec.angular.is_some() {
            v += self.bend(x[2]);
        }
        v
    }
}

/// Multi-index strides for `dims`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn unflatten(mut j: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = j % dims[i];
        j /= dims[i];
    }
    out
}

/// `(I ⊗ op ⊗ I) · x` with `op` acting on `mode`.
///
/// Column-major storage splits into contiguous `stride × n` blocks `B`, and
/// the mode product is `B opᵀ` on every block.
pub fn apply_mode_left(x: &DMatrix<f64>, dims: &[usize], mode: usize, op: &DMatrix<f64>) -> DMatrix<f64> {
    let n = dims[mode];
    let stride = strides(dims)[mode];
    let block = stride * n;
    let opt = op.transpose();
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    if stride == 1 && block == x.nrows() {
        out.gemm(1.0, op, x, 0.0);
        return out;
    }
    for (b_in, b_out) in x.as_slice().chunks(block).zip(out.as_mut_slice().chunks_mut(block)) {
        let bi = DMatrixView::from_slice(b_in, stride, n);
        DMatrixViewMut::from_slice(b_out, stride, n).gemm(1.0, &bi, &opt, 0.0);
    }
    out
}

/// `Aᵀ X A` with `A = ⊗_i ops[i]`.
pub fn congruence(x: &DMatrix<f64>, dims: &[usize], ops: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let mut m = x.clone();
    for (i, op) in ops.iter().enumerate() {
        m = apply_mode_left(&m, dims, i, &op.transpose());
    }
    let mut m = m.transpose();
    for (i, op) in ops.iter().enumerate() {
        m = apply_mode_left(&m, dims, i, &op.transpose());
    }
    let m = m.transpose();
    (&m + m.transpose()) * 0.5
}

/// Grid samples of a function of the product coordinates, in flattened order.
fn sample(bases: &[ModeBasis], f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let dims: Vec<usize> = bases.iter().map(ModeBasis::n).collect();
    let total: usize = dims.iter().product();
    let mut x = vec![0.0; dims.len()];
    (0..total)
        .map(|j| {
            for (k, &i) in unflatten(j, &dims).iter().enumerate() {
                x[k] = bases[k].points[i];
            }
            f(&x)
        })
        .collect()
}

/// Multiplicative factors of the kinetic operator sampled on the product grid.
struct Metric {
    /// `1/(2μ1R1²) + 1/(2μ2R2²) - cosθ/(μ12 R1 R2)`.
    g: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
    inv_r: [Vec<f64>; 2],
}

fn metric(spec: &ToyMoleculeSpec, bases: &[ModeBasis], halves: bool) -> Metric {
    let mu: Vec<f64> = spec.radial.iter().map(|r| da_to_me(r.mass)).collect();
    let r0: Vec<f64> = spec.radial.iter().map(|r| r.r0).collect();
    let frozen = spec.coupling.frozen_metric;
    let inv12 = spec.inv_mu12();
    let rad = |x: &[f64], i: usize| if frozen { r0[i] } else { x[i] };
    let g = sample(bases, |x| {
        let (r1, r2, c) = (rad(x, 0), rad(x, 1), x[2].cos());
        if halves {
            1.0 / (2.0 * mu[0] * r1 * r1) - c * inv12 / (2.0 * r1 * r2)
        } else {
            1.0 / (2.0 * mu[0] * r1 * r1) + 1.0 / (2.0 * mu[1] * r2 * r2) - c * inv12 / (r1 * r2)
        }
    });
    let ang = &bases[2];
    let inv = |i: usize| bases[i].points.iter().map(|&r| 1.0 / if frozen { r0[i] } else { r }).collect();
    Metric {
        g,
        cos: ang.points.iter().map(|t| t.cos()).collect(),
        sin: ang.points.iter().map(|t| t.sin()).collect(),
        inv_r: [inv(0), inv(1)],
    }
}

/// Dense FBR and DVR matrices of one toy Hamiltonian, in hartree.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrices {
    pub dims: Vec<usize>,
    pub fbr: DMatrix<f64>,
    pub dvr: DMatrix<f64>,
}

/// Assembles the `J = 0` Hamiltonian of any supported shape.
///
/// Triatomic: `P1²/2μ1 + P2²/2μ2 + Pθ† g Pθ + cosθ P1P2/μ12
/// + (P1/R2 + P2/R1)(Pθ† sinθ + sinθ Pθ)/(2μ12) + V`. Two-mode drops the bend
/// and keeps `P1P2/μ12`. Every `μ12` term vanishes in the decoupled limit.
pub fn hamiltonian(spec: &ToyMoleculeSpec) -> Result<HamiltonianMatrices, MolhamError> {
    build(spec, false)
}

/// The triatomic case, with the dense-size guard `n_R² n_θ ≤ 4096`.
pub fn water_hamiltonian(spec: &ToyMoleculeSpec) -> Result<HamiltonianMatrices, MolhamError> {
    if spec.shape() != Shape::Triatomic {
        return Err(MolhamError::Shape("water form needs two stretches and a bend".into()));
    }
    build(spec, false)
}

/// `H_eff` with `H = H_eff + S H_eff S`, `S` exchanging the stretches.
pub fn effective_hamiltonian(spec: &ToyMoleculeSpec) -> Result<HamiltonianMatrices, MolhamError> {
    if spec.shape() != Shape::Triatomic || !spec.is_exchange_symmetric() {
        return Err(MolhamError::Shape("exchange symmetry needs identical stretches".into()));
    }
    build(spec, true)
}

fn build(spec: &ToyMoleculeSpec, halves: bool) -> Result<HamiltonianMatrices, MolhamError> {
    spec.validate()?;
    let dims = spec.sizes();
    let total: usize = dims.iter().product();
    if total > DENSE_DIM_LIMIT {
        return Err(MolhamError::TooLarge { dim: total, limit: DENSE_DIM_LIMIT });
    }
    let bases = mode_bases(spec)?;
    let pes = Pes::new(spec);
    let scale_v = if halves { 0.5 } else { 1.0 };
    let v = sample(&bases, |x| scale_v * pes.eval(x));
    let id: Vec<DMatrix<f64>> = dims.iter().map(|&n| DMatrix::identity(n, n)).collect();
    let ts: Vec<&DMatrix<f64>> = bases.iter().map(|b| &b.transform.matrix).collect();
    let kron = |ms: &[&DMatrix<f64>]| ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kronecker(m));
    let mu: Vec<f64> = spec.radial.iter().map(|r| da_to_me(r.mass)).collect();
    let inv12 = spec.inv_mu12();
    let stretches = if halves { 1 } else { spec.radial.len() };

    let mut fbr = congruence(&DMatrix::from_diagonal(&v.clone().into()), &dims, &ts);
    let mut dvr = DMatrix::from_diagonal(&v.into());
    let dvr_d: Vec<DMatrix<f64>> = bases.iter().map(|b| b.to_dvr(&b.deriv)).collect();

    for i in 0..stretches {
        let k = &bases[i].kinetic / (2.0 * mu[i]);
        let mut f: Vec<&DMatrix<f64>> = id.iter().collect();
        f[i] = &k;
        fbr += kron(&f);
        let kd = bases[i].to_dvr(&k);
        f[i] = &kd;
        dvr += kron(&f);
    }

    let pp = if halves { 0.5 } else { 1.0 } * inv12;
    match spec.shape() {
        Shape::Oscillator => {}
        Shape::TwoMode => {
            if pp != 0.0 {
                fbr -= kron(&[&bases[0].deriv, &bases[1].deriv]) * pp;
                dvr -= kron(&[&dvr_d[0], &dvr_d[1]]) * pp;
            }
        }
        Shape::Triatomic => {
            let m = metric(spec, &bases, halves);
            let ang = &bases[2];
            // Pθ† g Pθ, with (T ⊗ T ⊗ T)(I ⊗ I ⊗ D) = T ⊗ T ⊗ TD.
            let g = DMatrix::from_diagonal(&m.g.clone().into());
            let td = &ang.transform.matrix * &ang.deriv;
            fbr += congruence(&g, &dims, &[ts[0], ts[1], &td]);
            dvr += congruence(&g, &dims, &[&id[0], &id[1], &dvr_d[2]]);
            if inv12 != 0.0 {
                let cos_f = ang.fbr_of(&m.cos);
                let cos_d = DMatrix::from_diagonal(&m.cos.clone().into());
                fbr -= kron(&[&bases[0].deriv, &bases[1].deriv, &cos_f]) * pp;
                dvr -= kron(&[&dvr_d[0], &dvr_d[1], &cos_d]) * pp;
                // Pθ† sinθ + sinθ Pθ = i (S D - Dᵀ S); the factors of i cancel against P_R = -i d/dR.
                let s_f = ang.fbr_of(&m.sin);
                let a_f = &s_f * &ang.deriv - ang.deriv.transpose() * &s_f;
                let s_d = DMatrix::from_diagonal(&m.sin.clone().into());
                let a_d = &s_d * &dvr_d[2] - dvr_d[2].transpose() * &s_d;
                let c = 0.5 * inv12;
                let inv_f: Vec<DMatrix<f64>> = (0..2).map(|i| bases[i].fbr_of(&m.inv_r[i])).collect();
                let inv_d: Vec<DMatrix<f64>> =
                    (0..2).map(|i| DMatrix::from_diagonal(&m.inv_r[i].clone().into())).collect();
                fbr += kron(&[&bases[0].deriv, &inv_f[1], &a_f]) * c;
                dvr += kron(&[&dvr_d[0], &inv_d[1], &a_d]) * c;
                if !halves {
                    fbr += kron(&[&inv_f[0], &bases[1].deriv, &a_f]) * c;
                    dvr += kron(&[&inv_d[0], &dvr_d[1], &a_d]) * c;
                }
            }
        }
    }
    let fbr = (&fbr + fbr.transpose()) * 0.5;
    let dvr = (&dvr + dvr.transpose()) * 0.5;
    Ok(HamiltonianMatrices { dims, fbr, dvr })
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Per-mode 1D Hamiltonians of a separable spec, in FBR.
pub fn separable_parts(spec: &ToyMoleculeSpec) -> Result<Vec<DMatrix<f64>>, MolhamError> {
    spec.validate()?;
    let coupled = spec.inv_mu12() != 0.0
        || spec.pes.bilinear != 0.0
        || (spec.angular.is_some() && !spec.coupling.frozen_metric);
    if coupled {
        return Err(MolhamError::Shape("spec is not separable".into()));
    }
    let bases = mode_bases(spec)?;
    let pes = Pes::new(spec);
    let mut parts = Vec::new();
    for (i, b) in bases.iter().take(spec.radial.len()).enumerate() {
        let v: Vec<f64> = b.points.iter().map(|&r| pes.radial(i, r)).collect();
        parts.push(&b.kinetic / (2.0 * da_to_me(spec.radial[i].mass)) + b.fbr_of(&v));
    }
    if spec.angular.is_some() {
        let b = &bases[2];
        let v: Vec<f64> = b.points.iter().map(|&t| pes.bend(t)).collect();
        parts.push(&b.kinetic * bend_metric_eq(spec) + b.fbr_of(&v));
    }
    Ok(parts)
}

/// Every sum of one eigenvalue per mode, ascending.
pub fn separable_levels(spec: &ToyMoleculeSpec) -> Result<Vec<f64>, MolhamError> {
    let mut sums = vec![0.0];
    for p in separable_parts(spec)? {
        let e = eigenvalues(&p);
        sums = sums.iter().flat_map(|s| e.iter().map(move |x| s + x)).collect();
    }
    sums.sort_by(|a, b| a.total_cmp(b));
    Ok(sums)
}
