use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::{hamiltonian, mode_bases, ModeBasis, Pes, DENSE_DIM_LIMIT};
use crate::spec::{Shape, ToyMoleculeSpec};
use crate::units::{da_to_me, hartree_to_cm};
use crate::MolhamError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    FullDvr,
    SeparateDvr,
    FbrDvr,
    LcuFbr,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Self::LcuFbr, Self::FullDvr, Self::SeparateDvr, Self::FbrDvr];

    pub fn label(&self) -> &'static str {
        match self {
            Self::FullDvr => "FULL_DVR",
            Self::SeparateDvr => "SEPARATE_DVR",
            Self::FbrDvr => "FBR_DVR",
            Self::LcuFbr => "LCU_FBR",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "FULL_DVR" => Ok(Self::FullDvr),
            "SEPARATE_DVR" => Ok(Self::SeparateDvr),
            "FBR_DVR" => Ok(Self::FbrDvr),
            "LCU_FBR" => Ok(Self::LcuFbr),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

/// Max-norm bound `√(μω(N_R+1)/2)` of the oscillator momentum with `N_R + 1 = n` functions.
pub fn lambda_pr(mass_me: f64, omega_h: f64, n: usize) -> f64 {
    (mass_me * omega_h * n as f64 / 2.0).sqrt()
}

/// Max-norm `√(4(N-1)² - 1)` of the Legendre derivative with `N` functions.
pub fn lambda_pu(n: usize) -> f64 {
    let m = n as f64 - 1.0;
    (4.0 * m * m - 1.0).max(0.0).sqrt()
}

/// `⟨k|P|k'⟩` magnitudes of the oscillator momentum, `√(μω/2) √k` on the off-diagonals.
pub fn ho_momentum_matrix(n: usize, mass_me: f64, omega_h: f64) -> DMatrix<f64> {
    let s = (mass_me * omega_h / 2.0).sqrt();
    DMatrix::from_fn(n, n, |a, b| {
        if a + 1 == b {
            s * (b as f64).sqrt()
        } else if b + 1 == a {
            -s * (a as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `J_z` in the symmetric-top basis `k = -J..=J`.
pub fn symmetric_top_jz(j: u32) -> DMatrix<f64> {
    let n = 2 * j as usize + 1;
    DMatrix::from_fn(n, n, |a, b| if a == b { a as f64 - j as f64 } else { 0.0 })
}

/// `J_x = (J_+ + J_-)/2` in the symmetric-top basis.
pub fn symmetric_top_jx(j: u32) -> DMatrix<f64> {
    let n = 2 * j as usize + 1;
    let jj = j as f64 * (j as f64 + 1.0);
    DMatrix::from_fn(n, n, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        if hi == lo + 1 {
            let k = lo as f64 - j as f64;
            0.5 * (jj - k * (k + 1.0)).sqrt()
        } else {
            0.0
        }
    })
}

pub fn jz_norm(j: u32) -> f64 {
    j as f64
}

/// `ζ = 2 · max ladder element` of the 2-sparse `J_x`.
pub fn jx_zeta(j: u32) -> f64 {
    if j == 0 {
        return 0.0;
    }
    let jj = j as f64 * (j as f64 + 1.0);
    let m = (0..2 * j)
        .map(|i| {
            let k = i as f64 - j as f64;
            0.5 * (jj - k * (k + 1.0)).sqrt()
        })
        .fold(0.0, f64::max);
    2.0 * m
}

/// One Hamiltonian term and the bounds every strategy needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamTerm {
    pub name: String,
    /// Largest `|coefficient function|` on the grid, including mass factors.
    pub coeff_max: f64,
    /// Modes carrying a momentum factor; `P²` lists its mode twice.
    pub momenta: Vec<usize>,
    /// `Pθ† s + s Pθ`: two momentum applications in one term.
    pub symmetrized: bool,
    /// DVR row pattern, 1 (diagonal) or `n_i` (dense) per mode.
    pub pattern: Vec<usize>,
    /// Bound on the DVR max-norm of the term.
    pub dvr_max: f64,
    /// Number of distinct grid values of the coefficient function.
    pub table_len: u64,
}

impl HamTerm {
    pub fn sparsity(&self) -> u64 {
        self.pattern.iter().map(|&p| p as u64).product()
    }
}

/// Momentum `ζ` per mode: `2 λ_PR` for stretches, `⌈n/2⌉ λ_Pu / h` for the bend.
pub fn momentum_zeta(spec: &ToyMoleculeSpec) -> Vec<f64> {
    let mut z: Vec<f64> = spec
        .radial
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let s = spec.scaling(i);
            2.0 * lambda_pr(s.mass, s.omega, r.n)
        })
        .collect();
    if let Some(a) = &spec.angular {
        z.push(a.n.div_ceil(2) as f64 * lambda_pu(a.n) / a.half_width());
    }
    z
}

fn amax(m: &DMatrix<f64>) -> f64 {
    m.amax()
}

fn abs_gram_max(m: &DMatrix<f64>) -> f64 {
    let a = m.abs();
    amax(&(a.transpose() * a))
}

/// Term table of the `J = 0` Hamiltonian with the coefficient bounds sampled on the grid.
pub fn term_table(spec: &ToyMoleculeSpec) -> Result<Vec<HamTerm>, MolhamError> {
    spec.validate()?;
    Ok(term_table_with(spec, &mode_bases(spec)?))
}

pub(crate) fn term_table_with(spec: &ToyMoleculeSpec, bases: &[ModeBasis]) -> Vec<HamTerm> {
    let dims: Vec<usize> = spec.sizes();
    let d = dims.len();
    let mu: Vec<f64> = spec.radial.iter().map(|r| da_to_me(r.mass)).collect();
    let inv12 = spec.inv_mu12();
    let dvr_d: Vec<DMatrix<f64>> = bases.iter().map(|b| b.to_dvr(&b.deriv)).collect();
    let pat = |dense: &[usize]| -> Vec<usize> {
        (0..d).map(|i| if dense.contains(&i) { dims[i] } else { 1 }).collect()
    };
    let mut terms = Vec::new();
    for i in 0..spec.radial.len() {
        let c = 1.0 / (2.0 * mu[i]);
        terms.push(HamTerm {
            name: format!("kinetic-r{}", i + 1),
            coeff_max: c,
            momenta: vec![i, i],
            symmetrized: false,
            pattern: pat(&[i]),
            dvr_max: c * amax(&bases[i].to_dvr(&bases[i].kinetic)),
            table_len: 1,
        });
    }
    let n_total: u64 = dims.iter().map(|&n| n as u64).product();
    match spec.shape() {
        Shape::Oscillator => {}
        Shape::TwoMode => {
            if inv12 != 0.0 {
                terms.push(HamTerm {
                    name: "kinetic-r1r2".into(),
                    coeff_max: inv12,
                    momenta: vec![0, 1],
                    symmetrized: false,
                    pattern: pat(&[0, 1]),
                    dvr_max: inv12 * amax(&dvr_d[0]) * amax(&dvr_d[1]),
                    table_len: 1,
                });
            }
        }
        Shape::Triatomic => {
            let r0: Vec<f64> = spec.radial.iter().map(|r| r.r0).collect();
            let frozen = spec.coupling.frozen_metric;
            let rmin: Vec<f64> = (0..2)
                .map(|i| if frozen { r0[i] } else { bases[i].points.iter().cloned().fold(f64::MAX, f64::min) })
                .collect();
            let ang = &bases[2];
            let (mut gmax, mut cmax, mut smax) = (0.0f64, 0.0f64, 0.0f64);
            for &t in &ang.points {
                cmax = cmax.max(t.cos().abs());
                smax = smax.max(t.sin().abs());
            }
            for &r1 in &bases[0].points {
                for &r2 in &bases[1].points {
                    let (r1, r2) = if frozen { (r0[0], r0[1]) } else { (r1, r2) };
                    for &t in &ang.points {
                        let g = 1.0 / (2.0 * mu[0] * r1 * r1) + 1.0 / (2.0 * mu[1] * r2 * r2)
                            - t.cos() * inv12 / (r1 * r2);
                        gmax = gmax.max(g.abs());
                    }
                }
            }
            terms.push(HamTerm {
                name: "kinetic-bend".into(),
                coeff_max: gmax,
                momenta: vec![2, 2],
                symmetrized: false,
                pattern: pat(&[2]),
                dvr_max: gmax * abs_gram_max(&dvr_d[2]),
                table_len: n_total,
            });
            if inv12 != 0.0 {
                terms.push(HamTerm {
                    name: "kinetic-r1r2".into(),
                    coeff_max: inv12 * cmax,
                    momenta: vec![0, 1],
                    symmetrized: false,
                    pattern: pat(&[0, 1]),
                    dvr_max: inv12 * cmax * amax(&dvr_d[0]) * amax(&dvr_d[1]),
                    table_len: dims[2] as u64,
                });
                let s_d = DMatrix::from_diagonal(&ang.points.iter().map(|t| t.sin()).collect::<Vec<_>>().into());
                let a_d = &s_d * &dvr_d[2] - dvr_d[2].transpose() * &s_d;
                for i in 0..2 {
                    let other = 1 - i;
                    let c = 0.5 * inv12 / rmin[other] * smax;
                    terms.push(HamTerm {
                        name: format!("kinetic-r{}-bend", i + 1),
                        coeff_max: c,
                        momenta: vec![i, 2],
                        symmetrized: true,
                        pattern: pat(&[i, 2]),
                        dvr_max: 0.5 * inv12 / rmin[other] * amax(&dvr_d[i]) * amax(&a_d),
                        table_len: (dims[other] * dims[2]) as u64,
                    });
                }
            }
        }
    }
    let vmax = pes_max(spec, bases);
    terms.push(HamTerm {
        name: "potential".into(),
        coeff_max: vmax,
        momenta: vec![],
        symmetrized: false,
        pattern: vec![1; d],
        dvr_max: vmax,
        table_len: n_total,
    });
    terms
}

fn pes_max(spec: &ToyMoleculeSpec, bases: &[ModeBasis]) -> f64 {
    let pes = Pes::new(spec);
    let dims: Vec<usize> = bases.iter().map(ModeBasis::n).collect();
    let total: usize = dims.iter().product();
    let mut x = vec![0.0; dims.len()];
    let mut m = 0.0f64;
    for j in 0..total {
        let mut r = j;
        for k in (0..dims.len()).rev() {
            x[k] = bases[k].points[r % dims[k]];
            r /= dims[k];
        }
        m = m.max(pes.eval(&x).abs());
    }
    m
}

/// Rows of the union of box patterns through one grid point, by inclusion-exclusion.
pub fn union_sparsity(patterns: &[Vec<usize>]) -> u64 {
    let k = patterns.len();
    if k == 0 {
        return 0;
    }
    let d = patterns[0].len();
    let mut total: i128 = 0;
    for mask in 1u32..(1 << k) {
        let mut inter = vec![usize::MAX; d];
        for (t, p) in patterns.iter().enumerate() {
            if mask >> t & 1 == 1 {
                for i in 0..d {
                    inter[i] = inter[i].min(p[i]);
                }
            }
        }
        let size: i128 = inter.iter().map(|&v| v as i128).product();
        total += if mask.count_ones() % 2 == 1 { size } else { -size };
    }
    total as u64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormTerm {
    pub name: String,
    /// Contribution to `ζ_H`, hartree.
    pub zeta: f64,
    pub sparsity: u64,
}

/// Block-encoding scale of one strategy; `total` is the sum of the term contributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormEstimate {
    pub strategy: Strategy,
    pub terms: Vec<NormTerm>,
    pub lambda_pr: Vec<f64>,
    pub lambda_pu: Option<f64>,
    pub v_max: f64,
    pub total_hartree: f64,
    pub total_cm: f64,
    /// Lower end of the LCU range, cm⁻¹.
    pub lower_cm: Option<f64>,
    /// The LCU range comes from the dense matrix rather than the term bound.
    pub exact_l2: bool,
    /// The angular window reaches `sinθ = 0`.
    pub singular_window: bool,
}

/// `ζ_H` for one strategy.
///
/// FBR_DVR multiplies momentum `ζ`s by the largest coefficient per term.
/// FULL_DVR is `ρ_H` times the summed DVR max-norm bounds, SEPARATE_DVR sums
/// `ρ_t` times each bound. LCU_FBR spans `[L2, N·L2]` with
/// `L2 = √(Tr H² / N)`; `total` reports the upper end.
pub fn norm_estimates(spec: &ToyMoleculeSpec, strategy: Strategy) -> Result<NormEstimate, MolhamError> {
    let terms = term_table(spec)?;
    estimate_with(spec, strategy, &terms)
}

pub(crate) fn estimate_with(
    spec: &ToyMoleculeSpec,
    strategy: Strategy,
    terms: &[HamTerm],
) -> Result<NormEstimate, MolhamError> {
    let pz = momentum_zeta(spec);
    let fbr_zeta = |t: &HamTerm| {
        let p: f64 = t.momenta.iter().map(|&m| pz[m]).product();
        t.coeff_max * p * if t.symmetrized { 2.0 } else { 1.0 }
    };
    let live: Vec<&HamTerm> = terms.iter().filter(|t| t.coeff_max != 0.0).collect();
    let mut lower = None;
    let mut exact_l2 = false;
    let out: Vec<NormTerm> = match strategy {
        Strategy::FbrDvr => live
            .iter()
            .map(|t| NormTerm { name: t.name.clone(), zeta: fbr_zeta(t), sparsity: 1 })
            .collect(),
        Strategy::FullDvr => {
            let rho = union_sparsity(&live.iter().map(|t| t.pattern.clone()).collect::<Vec<_>>());
            live.iter()
                .map(|t| NormTerm { name: t.name.clone(), zeta: rho as f64 * t.dvr_max, sparsity: rho })
                .collect()
        }
        Strategy::SeparateDvr => live
            .iter()
            .map(|t| NormTerm { name: t.name.clone(), zeta: t.sparsity() as f64 * t.dvr_max, sparsity: t.sparsity() })
            .collect(),
        Strategy::LcuFbr => {
            let n = spec.dim() as f64;
            let l2 = if spec.dim() <= DENSE_DIM_LIMIT {
                exact_l2 = true;
                let h = hamiltonian(spec)?;
                h.fbr.norm() / n.sqrt()
            } else {
                live.iter().map(|t| fbr_zeta(t)).sum()
            };
            lower = Some(hartree_to_cm(l2));
            vec![NormTerm { name: "pauli-sum".into(), zeta: n * l2, sparsity: spec.dim() as u64 }]
        }
    };
    let total: f64 = out.iter().map(|t| t.zeta).sum();
    let singular_window = spec.angular.as_ref().is_some_and(|a| {
        let (lo, hi) = (a.theta0_rad() - a.half_width(), a.theta0_rad() + a.half_width());
        lo.sin() < 1e-9 || hi.sin() < 1e-9
    });
    Ok(NormEstimate {
        strategy,
        terms: out,
        lambda_pr: (0..spec.radial.len())
            .map(|i| {
                let s = spec.scaling(i);
                lambda_pr(s.mass, s.omega, spec.radial[i].n)
            })
            .collect(),
        lambda_pu: spec.angular.as_ref().map(|a| lambda_pu(a.n)),
        v_max: terms.last().map_or(0.0, |t| t.coeff_max),
        total_hartree: total,
        total_cm: hartree_to_cm(total),
        lower_cm: lower,
        exact_l2,
        singular_window,
    })
}
