use std::f64::consts::FRAC_PI_2;

use dvr::{gauss_quadrature, HoScaling, QuadratureKind};
use serde::{Deserialize, Serialize};

use crate::units::{cm_to_hartree, da_to_me};
use crate::MolhamError;

/// Hydrogen and oxygen-16 nuclear masses in daltons.
pub const MASS_H_DA: f64 = 1.007_825_032_23;
pub const MASS_O_DA: f64 = 15.994_914_619_57;

/// A stretch coordinate in a harmonic-oscillator basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialMode {
    /// Reduced mass, Da.
    pub mass: f64,
    /// Harmonic frequency, cm⁻¹.
    pub omega: f64,
    /// Equilibrium length, bohr.
    pub r0: f64,
    pub n: usize,
}

/// A bending coordinate in a Legendre basis on `θ0 ± θ_max·π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngularMode {
    pub n: usize,
    /// Equilibrium angle, degrees.
    pub theta0: f64,
    /// Half-width of the angular window as a fraction of π/2.
    pub theta_max: f64,
    /// Bending frequency, cm⁻¹; sets the harmonic bending stiffness.
    pub omega: f64,
}

impl AngularMode {
    /// Half-width in radians.
    pub fn half_width(&self) -> f64 {
        self.theta_max * FRAC_PI_2
    }

    pub fn theta0_rad(&self) -> f64 {
        self.theta0.to_radians()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PesKind {
    #[default]
    Harmonic,
    Morse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PesSpec {
    #[serde(default)]
    pub kind: PesKind,
    /// Morse dissociation energy, cm⁻¹.
    #[serde(default)]
    pub depth: Option<f64>,
    /// Bilinear stretch-stretch coupling `f (R1 - r0)(R2 - r0)`, cm⁻¹ / bohr².
    #[serde(default)]
    pub bilinear: f64,
}

impl Default for PesSpec {
    fn default() -> Self {
        Self { kind: PesKind::Harmonic, depth: None, bilinear: 0.0 }
    }
}

/// Kinetic coupling between the two stretches.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coupling {
    /// Mass of the central atom, Da; `None` is the decoupled limit.
    #[serde(default)]
    pub mu12: Option<f64>,
    /// Evaluate every `1/R` factor at `r0` instead of on the grid.
    #[serde(default)]
    pub frozen_metric: bool,
}

/// A toy molecule: one stretch (1D oscillator), two stretches (2-mode), or
/// two stretches and a bend (water-form triatomic). `J` is carried for the
/// cost tables; matrices are built at `J = 0` only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToyMoleculeSpec {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub j: u32,
    pub radial: Vec<RadialMode>,
    #[serde(default)]
    pub angular: Option<AngularMode>,
    #[serde(default)]
    pub coupling: Coupling,
    #[serde(default)]
    pub pes: PesSpec,
}

fn default_name() -> String {
    "molecule".into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Oscillator,
    TwoMode,
    Triatomic,
}

impl ToyMoleculeSpec {
    /// Water in valence coordinates with textbook harmonic parameters.
    pub fn water(n_r: usize, n_theta: usize) -> Self {
        let mu = MASS_H_DA * MASS_O_DA / (MASS_H_DA + MASS_O_DA);
        let stretch = RadialMode { mass: mu, omega: 3832.0, r0: 1.8112, n: n_r };
        Self {
            name: "water".into(),
            j: 0,
            radial: vec![stretch, stretch],
            angular: Some(AngularMode { n: n_theta, theta0: 104.52, theta_max: 0.6, omega: 1649.0 }),
            coupling: Coupling { mu12: Some(MASS_O_DA), frozen_metric: false },
            pes: PesSpec::default(),
        }
    }

    /// A single harmonic stretch.
    pub fn oscillator(n: usize, mass: f64, omega: f64, r0: f64) -> Self {
        Self {
            name: "oscillator".into(),
            j: 0,
            radial: vec![RadialMode { mass, omega, r0, n }],
            angular: None,
            coupling: Coupling::default(),
            pes: PesSpec::default(),
        }
    }

    /// Parses the TOML schema and validates it.
    pub fn from_toml(text: &str) -> Result<Self, MolhamError> {
        let spec: Self = toml::from_str(text).map_err(|e| MolhamError::Config {
            field: "<document>".into(),
            msg: e.message().to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    /// Mode count `D`.
    pub fn modes(&self) -> usize {
        self.radial.len() + usize::from(self.angular.is_some())
    }

    pub fn shape(&self) -> Shape {
        match (self.radial.len(), self.angular.is_some()) {
            (1, _) => Shape::Oscillator,
            (2, false) => Shape::TwoMode,
            _ => Shape::Triatomic,
        }
    }

    /// Basis sizes, radial modes first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.radial.iter().map(|r| r.n).collect();
        if let Some(a) = &self.angular {
            v.push(a.n);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.sizes().iter().product()
    }

    /// `1/μ12` in atomic units; zero in the decoupled limit.
    pub fn inv_mu12(&self) -> f64 {
        self.coupling.mu12.map_or(0.0, |m| 1.0 / da_to_me(m))
    }

    pub fn scaling(&self, i: usize) -> HoScaling {
        let r = &self.radial[i];
        HoScaling { mass: da_to_me(r.mass), omega: cm_to_hartree(r.omega), r0: r.r0 }
    }

    /// Checks the invariants; errors name the offending field.
    pub fn validate(&self) -> Result<(), MolhamError> {
        let bad = |field: String, msg: &str| Err(MolhamError::Config { field, msg: msg.into() });
        if self.radial.is_empty() || self.radial.len() > 2 {
            return bad("radial".into(), "expected one or two stretch modes");
        }
        if self.angular.is_some() && self.radial.len() != 2 {
            return bad("angular".into(), "a bend needs two stretches");
        }
        for (i, r) in self.radial.iter().enumerate() {
            if !(r.mass > 0.0 && r.mass.is_finite()) {
                return bad(format!("radial[{i}].mass"), "must be positive");
            }
            if !(r.omega > 0.0 && r.omega.is_finite()) {
                return bad(format!("radial[{i}].omega"), "must be positive");
            }
            if !(r.r0 > 0.0 && r.r0.is_finite()) {
                return bad(format!("radial[{i}].r0"), "must be positive");
            }
            if r.n < 2 {
                return bad(format!("radial[{i}].n"), "basis needs at least 2 functions");
            }
            let q = gauss_quadrature(QuadratureKind::Hermite, r.n)
                .map_err(|e| MolhamError::Config { field: format!("radial[{i}].n"), msg: e.to_string() })?;
            let s = self.scaling(i);
            if q.nodes.iter().any(|&x| s.to_physical(x) <= 0.0) {
                return Err(MolhamError::Grid(format!(
                    "radial[{i}]: a node maps to r <= 0; raise r0 or shrink n"
                )));
            }
        }
        if let Some(a) = &self.angular {
            if a.n < 2 {
                return bad("angular.n".into(), "basis needs at least 2 functions");
            }
            if !(a.omega > 0.0 && a.omega.is_finite()) {
                return bad("angular.omega".into(), "must be positive");
            }
            if !(a.theta_max > 0.0 && a.theta_max <= 1.0) {
                return bad("angular.theta_max".into(), "must lie in (0, 1]");
            }
            let (lo, hi) = (a.theta0_rad() - a.half_width(), a.theta0_rad() + a.half_width());
            if lo < -1e-12 || hi > std::f64::consts::PI + 1e-12 {
                return Err(MolhamError::Grid(format!(
                    "angular window [{lo:.4}, {hi:.4}] leaves [0, π]"
                )));
            }
        }
        if let Some(m) = self.coupling.mu12 {
            if !(m > 0.0 && m.is_finite()) {
                return bad("coupling.mu12".into(), "must be positive");
            }
        }
        if self.pes.kind == PesKind::Morse && !self.pes.depth.is_some_and(|d| d > 0.0) {
            return bad("pes.depth".into(), "Morse surface needs a positive depth");
        }
        if !self.pes.bilinear.is_finite() {
            return bad("pes.bilinear".into(), "must be finite");
        }
        Ok(())
    }

    /// True when both stretches, and the surface, are exchange symmetric.
    pub fn is_exchange_symmetric(&self) -> bool {
        self.radial.len() == 2 && self.radial[0] == self.radial[1]
    }
}
