//! Multi-resolution WENO on nested central stencils of 1, 3, ..., 2k+1 cells.

use super::poly::{smoothness_indicator, CellAverageFit, LocalPolynomial};
use super::Side;
use crate::config::WenoConfig;
use crate::error::{Error, Result};

/// Order-`(2k+1)` multi-resolution reconstruction on `w[i-k..=i+k]`.
///
/// Central fits `p̃_r` (degree `2r-2`) are unrolled into the telescoping
/// hierarchy `p_r = (p̃_r - Σ_{l<r} γ_{r,l} p_l) / γ_{r,r}` so that
/// `Σ_r γ_{k+1,r} p_r = p̃_{k+1}`.
#[derive(Debug, Clone)]
pub struct MrWeno {
    k: usize,
    /// `gamma[r - 1]` holds `γ_{r,1..=r}`; the first row is the trivial `[1]`.
    gamma: Vec<Vec<f64>>,
    epsilon: f64,
    fits: Vec<CellAverageFit>,
    inject_linear: bool,
}

impl MrWeno {
    pub fn new(k: usize, table: &[Vec<f64>], epsilon: f64) -> Result<Self> {
        if !(2..=3).contains(&k) {
            return Err(Error::UnsupportedOrder(k));
        }
        if table.len() != k || table.iter().enumerate().any(|(i, row)| row.len() != i + 2) {
            return Err(Error::InvalidConfig(format!(
                "weight table for k = {k} needs rows of length 2..={}",
                k + 1
            )));
        }
        let mut gamma = vec![vec![1.0]];
        gamma.extend(table.iter().cloned());
        let fits = (0..=k)
            .map(CellAverageFit::central)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            k,
            gamma,
            epsilon,
            fits,
            inject_linear: false,
        })
    }

    pub fn from_config(cfg: &WenoConfig) -> Result<Self> {
        cfg.validate()?;
        Self::new(cfg.k(), &cfg.mr_linear_weights, cfg.epsilon)
    }

    /// Test hook: use `ω_r = γ_{k+1,r}` so the result collapses to `p̃_{k+1}`.
    #[doc(hidden)]
    pub fn inject_linear_weights(mut self) -> Self {
        self.inject_linear = true;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn central_fits(&self, w: &[f64]) -> Vec<LocalPolynomial> {
        let k = self.k;
        self.fits
            .iter()
            .enumerate()
            .map(|(h, fit)| fit.fit(&w[k - h..=k + h]))
            .collect()
    }

    /// Unrolls `p̃_r` into `p_r` starting from the given level-1 polynomial.
    fn telescope(&self, tilde: &[LocalPolynomial], first: LocalPolynomial) -> Vec<LocalPolynomial> {
        let mut out = Vec::with_capacity(tilde.len());
        out.push(first);
        for r in 1..tilde.len() {
            let row = &self.gamma[r];
            let diag = row[r];
            let mut p = tilde[r].scaled(1.0 / diag);
            for (l, prev) in out.iter().enumerate() {
                p.axpy(-row[l] / diag, prev);
            }
            out.push(p);
        }
        out
    }

    /// Hierarchy `p_1..p_{k+1}` used in the final combination.
    pub fn hierarchy(&self, w: &[f64]) -> Vec<LocalPolynomial> {
        let tilde = self.central_fits(w);
        self.telescope(&tilde, tilde[0])
    }

    /// Smoothness indicators `β_1..β_{k+1}`; `β_1` from the blended slope and
    /// the others from the hierarchy rebuilt on the linear surrogate `P_1`.
    pub fn smoothness(&self, w: &[f64]) -> Vec<f64> {
        let k = self.k;
        let tilde = self.central_fits(w);
        let (beta1, p1_surrogate) = mr_beta1(w[k - 1], w[k], w[k + 1], k, self.epsilon);
        let modified = self.telescope(&tilde, p1_surrogate);
        std::iter::once(beta1)
            .chain(modified[1..].iter().map(smoothness_indicator))
            .collect()
    }

    pub fn nonlinear_weights(&self, beta: &[f64]) -> Vec<f64> {
        let top = &self.gamma[self.k];
        if self.inject_linear {
            return top.clone();
        }
        let k = self.k;
        let spread = beta[..k].iter().map(|b| (beta[k] - b).abs()).sum::<f64>() / k as f64;
        let tau = spread.powi(k as i32);
        let raw: Vec<f64> = top
            .iter()
            .zip(beta)
            .map(|(g, b)| g * (1.0 + tau / (b + self.epsilon)))
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / total).collect()
    }

    pub fn reconstruct(&self, w: &[f64]) -> (LocalPolynomial, Vec<f64>) {
        debug_assert_eq!(w.len(), 2 * self.k + 1);
        let k = self.k;
        let tilde = self.central_fits(w);
        let hierarchy = self.telescope(&tilde, tilde[0]);
        let omega = if self.inject_linear {
            self.gamma[k].clone()
        } else {
            let (beta1, p1_surrogate) = mr_beta1(w[k - 1], w[k], w[k + 1], k, self.epsilon);
            let modified = self.telescope(&tilde, p1_surrogate);
            let mut beta = Vec::with_capacity(k + 1);
            beta.push(beta1);
            beta.extend(modified[1..].iter().map(smoothness_indicator));
            self.nonlinear_weights(&beta)
        };
        let mut p = hierarchy[0].scaled(omega[0]);
        for (om, pr) in omega.iter().zip(&hierarchy).skip(1) {
            p.axpy(*om, pr);
        }
        (p, omega)
    }

    #[inline]
    pub fn point(&self, w: &[f64], side: Side) -> f64 {
        self.reconstruct(w).0.eval(side.offset())
    }
}

/// Raised smoothness indicator for the one-point stencil and its linear surrogate.
///
/// Blends the two one-sided slopes, favouring the smaller one, and returns the
/// squared blended slope together with `P_1(s) = slope * s`.
pub fn mr_beta1(f_minus: f64, f0: f64, f_plus: f64, k: usize, epsilon: f64) -> (f64, LocalPolynomial) {
    let d0 = f0 - f_minus;
    let d1 = f_plus - f0;
    let (pi0, pi1) = (d0 * d0, d1 * d1);
    let g0 = if pi0 >= pi1 { 1.0 / 11.0 } else { 10.0 / 11.0 };
    let g1 = 1.0 - g0;
    let gap = (pi0 - pi1).abs().powi(k as i32);
    let theta0 = g0 * (1.0 + gap / (pi0 + epsilon));
    let theta1 = g1 * (1.0 + gap / (pi1 + epsilon));
    let theta = theta0 + theta1;
    let slope = theta0 / theta * d0 + theta1 / theta * d1;
    (slope * slope, LocalPolynomial::linear(0.0, slope))
}

/// One-shot multi-resolution WENO value at `x_{i±1/2}` from `w[i-k..=i+k]`.
pub fn mr_weno_point(w: &[f64], side: Side, k: usize, cfg: &WenoConfig) -> Result<f64> {
    if !(2..=3).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    if w.len() != 2 * k + 1 {
        return Err(Error::InvalidConfig(format!(
            "window of {} values for k = {k}",
            w.len()
        )));
    }
    let table = if cfg.mr_linear_weights.len() == k {
        cfg.mr_linear_weights.clone()
    } else {
        crate::config::default_mr_weights(k)
    };
    Ok(MrWeno::new(k, &table, cfg.epsilon)?.point(w, side))
}
