//! Declarative run configuration, one experiment per TOML file.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use weno_dp::exact::{MuSmoothParams, DEFAULT_PROFILE_CELLS};
use weno_dp::{DtMode, Scheme, WenoConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Dp,
    Mudp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Weno5,
    Mrweno5,
    Mrweno7,
}

impl SchemeName {
    pub fn scheme(self) -> Scheme {
        match self {
            SchemeName::Weno5 => Scheme::Weno5Simple,
            SchemeName::Mrweno5 => Scheme::MrWeno5,
            SchemeName::Mrweno7 => Scheme::MrWeno7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DtModeName {
    #[default]
    Linear,
    Accuracy5,
    Accuracy7,
}

impl DtModeName {
    pub fn mode(self) -> DtMode {
        match self {
            DtModeName::Linear => DtMode::Linear,
            DtModeName::Accuracy5 => DtMode::Accuracy5,
            DtModeName::Accuracy7 => DtMode::Accuracy7,
        }
    }
}

/// What the numerical solution is compared against.
///
/// `self_fine` means the MR-WENO7 solution at 4n restricted to the run grid
/// for a single run, and successive refinement (n against 2n) in convergence
/// mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    Exact,
    SelfFine,
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSizes {
    One(usize),
    Many(Vec<usize>),
}

impl GridSizes {
    pub fn as_slice(&self) -> &[usize] {
        match self {
            GridSizes::One(n) => std::slice::from_ref(n),
            GridSizes::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveProfile {
    Gaussian,
    Sech,
}

fn default_profile_cells() -> usize {
    DEFAULT_PROFILE_CELLS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    Constant { value: f64 },
    Soliton { a: f64 },
    Peakon { c: f64 },
    Antipeakon { c: f64 },
    TwoPeakon { c1: f64, c2: f64, x1: f64, x2: f64 },
    TwoAntipeakon { c1: f64, c2: f64, x1: f64, x2: f64 },
    ShockPeakon,
    PeakonAntipeakon,
    Triple,
    Wavebreak { profile: WaveProfile },
    MuSmooth {
        crest: f64,
        trough: f64,
        speed: f64,
        mu0: f64,
        period: f64,
        anchor_x: f64,
        #[serde(default = "default_profile_cells")]
        cells: usize,
    },
    MuPeakons { psi: Vec<f64>, phi: Vec<f64> },
    MuShocks { psi: Vec<f64>, phi: Vec<f64>, s: Vec<f64> },
}

impl InitialCondition {
    pub fn kind(&self) -> &'static str {
        match self {
            InitialCondition::Constant { .. } => "constant",
            InitialCondition::Soliton { .. } => "soliton",
            InitialCondition::Peakon { .. } => "peakon",
            InitialCondition::Antipeakon { .. } => "antipeakon",
            InitialCondition::TwoPeakon { .. } => "two_peakon",
            InitialCondition::TwoAntipeakon { .. } => "two_antipeakon",
            InitialCondition::ShockPeakon => "shock_peakon",
            InitialCondition::PeakonAntipeakon => "peakon_antipeakon",
            InitialCondition::Triple => "triple",
            InitialCondition::Wavebreak { .. } => "wavebreak",
            InitialCondition::MuSmooth { .. } => "mu_smooth",
            InitialCondition::MuPeakons { .. } => "mu_peakons",
            InitialCondition::MuShocks { .. } => "mu_shocks",
        }
    }

    fn equation(&self) -> Option<Equation> {
        match self {
            InitialCondition::Constant { .. } => None,
            InitialCondition::MuSmooth { .. }
            | InitialCondition::MuPeakons { .. }
            | InitialCondition::MuShocks { .. } => Some(Equation::Mudp),
            _ => Some(Equation::Dp),
        }
    }

    pub fn has_exact(&self) -> bool {
        matches!(
            self,
            InitialCondition::Constant { .. }
                | InitialCondition::Soliton { .. }
                | InitialCondition::Peakon { .. }
                | InitialCondition::Antipeakon { .. }
                | InitialCondition::ShockPeakon
                | InitialCondition::MuPeakons { .. }
                | InitialCondition::MuShocks { .. }
        )
    }

    pub fn mu_smooth_params(&self) -> Option<(MuSmoothParams, usize)> {
        match *self {
            InitialCondition::MuSmooth { crest, trough, speed, mu0, period, anchor_x, cells } => Some((
                MuSmoothParams { crest, trough, speed, mu0, period, anchor_x },
                cells,
            )),
            _ => None,
        }
    }
}

/// Linear-weight and ε overrides applied on top of the scheme defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<[f64; 3]>,
    /// Rows `γ_{r,1..=r}` for `r = 2..=k+1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mr: Option<Vec<Vec<f64>>>,
}

fn default_cfl() -> f64 {
    0.3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub equation: Equation,
    pub scheme: SchemeName,
    /// `[x_min, x_max]`
    pub domain: [f64; 2],
    pub n: GridSizes,
    pub t_end: f64,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub dt_mode: DtModeName,
    /// Output times; `t_end` is always written.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<f64>,
    #[serde(default)]
    pub reference: Reference,
    /// Relative to the output root; defaults to `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    pub ic: InitialCondition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightOverrides>,
}

fn invalid(field: &str, message: impl Into<String>) -> CliError {
    CliError::Config { field: field.to_string(), message: message.into() }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configs serialize")
    }

    pub fn weno_config(&self) -> Result<WenoConfig, CliError> {
        let mut cfg = WenoConfig::new(self.scheme.scheme()).with_dt_mode(self.dt_mode.mode());
        cfg.cfl = self.cfl;
        if let Some(w) = &self.weights {
            if let Some(eps) = w.epsilon {
                cfg.epsilon = eps;
            }
            if let Some(simple) = w.simple {
                cfg.simple_linear_weights = simple;
            }
            if let Some(mr) = &w.mr {
                cfg.mr_linear_weights = mr.clone();
            }
        }
        cfg.validate().map_err(|e| invalid("weights", e.to_string()))?;
        Ok(cfg)
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self.n, GridSizes::Many(_))
    }

    /// Snapshot times in increasing order, ending at `t_end`.
    pub fn output_times(&self) -> Vec<f64> {
        let mut times: Vec<f64> = self.snapshots.iter().copied().filter(|&t| t < self.t_end).collect();
        times.push(self.t_end);
        times
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(invalid("name", format!("'{}' is not a usable experiment name", self.name)));
        }
        let [a, b] = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(invalid("domain", format!("need x_min < x_max, got [{a}, {b}]")));
        }
        let sizes = self.n.as_slice();
        if sizes.is_empty() || sizes.iter().any(|&n| n < 8) {
            return Err(invalid("n", format!("grid sizes must be at least 8, got {sizes:?}")));
        }
        if sizes.windows(2).any(|w| w[1] <= w[0] || w[1] % w[0] != 0) {
            return Err(invalid("n", format!("convergence sizes must increase and nest, got {sizes:?}")));
        }
        if self.is_convergence() && sizes.len() < 2 {
            return Err(invalid("n", "a convergence study needs at least two sizes"));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(invalid("t_end", format!("must be finite and >= 0, got {}", self.t_end)));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(invalid("cfl", format!("must be positive, got {}", self.cfl)));
        }
        if self.snapshots.iter().any(|t| !(*t >= 0.0)) || self.snapshots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("snapshots", "times must be nonnegative and strictly increasing"));
        }
        if let Some(eq) = self.ic.equation() {
            if eq != self.equation {
                return Err(invalid(
                    "ic.kind",
                    format!("'{}' initial data belong to the {eq:?} equation", self.ic.kind()),
                ));
            }
        }
        match &self.ic {
            InitialCondition::MuSmooth { cells, .. } => {
                let (params, _) = self.ic.mu_smooth_params().unwrap();
                params.validate().map_err(|e| invalid("ic", e.to_string()))?;
                let half = 0.5 * params.period;
                if (a + half).abs() > 1e-12 * half || (b - half).abs() > 1e-12 * half {
                    return Err(invalid("domain", format!("the smooth wave lives on [-{half}, {half}]")));
                }
                let fine = sizes.last().unwrap() * if self.reference == Reference::SelfFine && !self.is_convergence() { 4 } else { 1 };
                if *cells == 0 || cells % fine != 0 {
                    return Err(invalid("n", format!("grid sizes must divide the {cells} profile cells")));
                }
            }
            InitialCondition::MuPeakons { psi, phi } => {
                check_particles(psi, phi, None)?;
                self.check_unit_domain()?;
            }
            InitialCondition::MuShocks { psi, phi, s } => {
                check_particles(psi, phi, Some(s))?;
                self.check_unit_domain()?;
            }
            InitialCondition::Soliton { a } if !(*a > 0.0) => {
                return Err(invalid("ic.a", "soliton amplitude must be positive"));
            }
            _ => {}
        }
        if self.reference == Reference::Exact && !self.ic.has_exact() {
            return Err(invalid(
                "reference",
                format!("no exact solution for '{}' initial data; use self_fine or none", self.ic.kind()),
            ));
        }
        if self.is_convergence() && self.reference == Reference::None {
            return Err(invalid("reference", "a convergence study needs exact or self_fine"));
        }
        self.weno_config()?;
        Ok(())
    }

    fn check_unit_domain(&self) -> Result<(), CliError> {
        if self.domain != [0.0, 1.0] {
            return Err(invalid("domain", "muDP peakons and shocks live on [0, 1]"));
        }
        Ok(())
    }
}

fn check_particles(psi: &[f64], phi: &[f64], s: Option<&Vec<f64>>) -> Result<(), CliError> {
    if psi.is_empty() || psi.len() != phi.len() || s.is_some_and(|s| s.len() != psi.len()) {
        return Err(invalid("ic", "psi, phi (and s) must be non-empty and equally long"));
    }
    Ok(())
}
