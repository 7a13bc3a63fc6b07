//! Scheme selection and linear-weight tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Reconstruction scheme for the nonlinear flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Fifth-order simple WENO: one five-point stencil plus two two-point stencils.
    Weno5Simple,
    /// Fifth-order multi-resolution WENO on nested central stencils of 1, 3, 5 points.
    MrWeno5,
    /// Seventh-order multi-resolution WENO on nested central stencils of 1, 3, 5, 7 points.
    MrWeno7,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Weno5Simple, Scheme::MrWeno5, Scheme::MrWeno7];

    /// Order parameter `k`; the scheme is of order `2k + 1`.
    pub fn k(self) -> usize {
        match self {
            Scheme::Weno5Simple | Scheme::MrWeno5 => 2,
            Scheme::MrWeno7 => 3,
        }
    }

    pub fn order(self) -> usize {
        2 * self.k() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Weno5Simple => "weno5",
            Scheme::MrWeno5 => "mrweno5",
            Scheme::MrWeno7 => "mrweno7",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "weno5" | "weno5simple" | "simpleweno5" => Ok(Scheme::Weno5Simple),
            "mrweno5" => Ok(Scheme::MrWeno5),
            "mrweno7" => Ok(Scheme::MrWeno7),
            _ => Err(Error::InvalidConfig(format!("unknown scheme '{s}'"))),
        }
    }
}

/// Time-step rule `dt = cfl * dx^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtMode {
    /// `p = 1`
    Linear,
    /// `p = 5/3`, balances third-order time stepping against fifth-order space.
    Accuracy5,
    /// `p = 7/3`
    Accuracy7,
}

impl DtMode {
    pub fn exponent(self) -> f64 {
        match self {
            DtMode::Linear => 1.0,
            DtMode::Accuracy5 => 5.0 / 3.0,
            DtMode::Accuracy7 => 7.0 / 3.0,
        }
    }

    /// Accuracy-scaled mode matching the spatial order of `scheme`.
    pub fn accuracy_for(scheme: Scheme) -> Self {
        match scheme.k() {
            2 => DtMode::Accuracy5,
            _ => DtMode::Accuracy7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DtMode::Linear => "linear",
            DtMode::Accuracy5 => "accuracy5",
            DtMode::Accuracy7 => "accuracy7",
        }
    }
}

impl FromStr for DtMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(DtMode::Linear),
            "accuracy5" => Ok(DtMode::Accuracy5),
            "accuracy7" => Ok(DtMode::Accuracy7),
            _ => Err(Error::InvalidConfig(format!("unknown dt mode '{s}'"))),
        }
    }
}

/// Lax-Friedrichs coefficient policy. Only the global maximum over the field is offered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    #[default]
    Global,
}

const SUM_TOL: f64 = 1e-14;

/// Everything the reconstruction and the time stepper need to know.
#[derive(Debug, Clone, PartialEq)]
pub struct WenoConfig {
    pub scheme: Scheme,
    pub epsilon: f64,
    /// `(γ₁, γ₂, γ₃)` for the simple scheme: big stencil, left pair, right pair.
    pub simple_linear_weights: [f64; 3],
    /// Row `r - 2` holds `γ_{r,1..=r}` for `r = 2..=k+1`.
    pub mr_linear_weights: Vec<Vec<f64>>,
    pub cfl: f64,
    pub dt_mode: DtMode,
    pub alpha_mode: AlphaMode,
}

impl WenoConfig {
    /// Default weights: `(0.98, 0.01, 0.01)` and the `1 : 10 : 100 : 1000` hierarchy.
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            epsilon: 1e-10,
            simple_linear_weights: [0.98, 0.01, 0.01],
            mr_linear_weights: default_mr_weights(scheme.k()),
            cfl: 0.3,
            dt_mode: DtMode::Linear,
            alpha_mode: AlphaMode::Global,
        }
    }

    /// Weight tables tuned for the mu-DP shock runs.
    pub fn shock_tuned(scheme: Scheme) -> Self {
        let mut cfg = Self::new(scheme);
        cfg.simple_linear_weights = [0.4, 0.3, 0.3];
        cfg.mr_linear_weights = match scheme {
            Scheme::MrWeno7 => vec![
                vec![1.0 / 11.0, 10.0 / 11.0],
                vec![1.0 / 111.0, 10.0 / 111.0, 100.0 / 111.0],
                vec![0.665, 0.001, 0.001, 0.333],
            ],
            _ => vec![
                vec![1.0 / 11.0, 10.0 / 11.0],
                vec![0.666, 0.001, 0.333],
            ],
        };
        cfg
    }

    pub fn with_dt_mode(mut self, mode: DtMode) -> Self {
        self.dt_mode = mode;
        self
    }

    pub fn k(&self) -> usize {
        self.scheme.k()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "cfl must be positive, got {}",
                self.cfl
            )));
        }
        match self.scheme {
            Scheme::Weno5Simple => {
                let w = &self.simple_linear_weights;
                if w.iter().any(|&g| !(g > 0.0)) {
                    return Err(Error::InvalidConfig(format!(
                        "simple linear weights must be positive, got {w:?}"
                    )));
                }
                let sum: f64 = w.iter().sum();
                if (sum - 1.0).abs() > SUM_TOL {
                    return Err(Error::InvalidConfig(format!(
                        "simple linear weights sum to {sum}, not 1"
                    )));
                }
            }
            Scheme::MrWeno5 | Scheme::MrWeno7 => {
                let k = self.k();
                if self.mr_linear_weights.len() != k {
                    return Err(Error::InvalidConfig(format!(
                        "multi-resolution weight table needs {k} rows (r = 2..={}), got {}",
                        k + 1,
                        self.mr_linear_weights.len()
                    )));
                }
                for (idx, row) in self.mr_linear_weights.iter().enumerate() {
                    let r = idx + 2;
                    if row.len() != r {
                        return Err(Error::InvalidConfig(format!(
                            "weight row r = {r} needs {r} entries, got {}",
                            row.len()
                        )));
                    }
                    if row[r - 1] == 0.0 || row.iter().any(|&g| !(g >= 0.0)) {
                        return Err(Error::InvalidConfig(format!(
                            "weight row r = {r} must be nonnegative with a nonzero diagonal: {row:?}"
                        )));
                    }
                    let sum: f64 = row.iter().sum();
                    if (sum - 1.0).abs() > SUM_TOL {
                        return Err(Error::InvalidConfig(format!(
                            "weight row r = {r} sums to {sum}, not 1"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `γ_{r,l} ∝ 10^{l-1}` normalised per row.
pub fn default_mr_weights(k: usize) -> Vec<Vec<f64>> {
    (2..=k + 1)
        .map(|r| {
            let total: f64 = (0..r).map(|l| 10f64.powi(l as i32)).sum();
            (0..r).map(|l| 10f64.powi(l as i32) / total).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        for s in Scheme::ALL {
            WenoConfig::new(s).validate().unwrap();
            WenoConfig::shock_tuned(s).validate().unwrap();
        }
        let w = default_mr_weights(3);
        assert_eq!(w[0], vec![1.0 / 11.0, 10.0 / 11.0]);
        assert!((w[2][3] - 1000.0 / 1111.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_weights() {
        let mut c = WenoConfig::new(Scheme::Weno5Simple);
        c.simple_linear_weights = [0.5, 0.5, 0.0];
        assert!(c.validate().is_err());
        c.simple_linear_weights = [0.5, 0.3, 0.3];
        assert!(c.validate().is_err());

        let mut c = WenoConfig::new(Scheme::MrWeno5);
        c.mr_linear_weights[1] = vec![0.5, 0.5, 0.0];
        assert!(c.validate().is_err());
        c.mr_linear_weights[1] = vec![-0.1, 0.6, 0.5];
        assert!(c.validate().is_err());
        c.mr_linear_weights.pop();
        assert!(c.validate().is_err());
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("MR-WENO7".parse::<Scheme>().unwrap(), Scheme::MrWeno7);
        assert!("weno9".parse::<Scheme>().is_err());
    }
}
