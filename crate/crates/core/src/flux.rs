//! Lax-Friedrichs splitting of `f(u) = u²/2` and assembly of the WENO flux.

use crate::config::WenoConfig;
use crate::error::{Error, Result};
use crate::grid::{max_abs, StateField};
use crate::reconstruction::{Reconstructor, Side};

#[inline]
pub fn burgers_flux(u: f64) -> f64 {
    0.5 * u * u
}

/// `f⁺ + f⁻ = f` with `df⁺/du ≥ 0 ≥ df⁻/du` on `|u| ≤ alpha`.
#[derive(Debug, Clone)]
pub struct SplitFlux {
    pub alpha: f64,
    pub plus: StateField,
    pub minus: StateField,
}

/// `max_j |f'(u_j)| = max_j |u_j|`.
pub fn global_alpha(u: &StateField) -> f64 {
    u.max_abs()
}

#[inline]
fn split_point(u: f64, alpha: f64) -> (f64, f64) {
    let f = burgers_flux(u);
    (0.5 * (f + alpha * u), 0.5 * (f - alpha * u))
}

/// `f±(u) = (f(u) ± alpha u) / 2`.
pub fn split(u: &StateField, alpha: f64) -> Result<SplitFlux> {
    let max_u = global_alpha(u);
    if !(alpha >= max_u) {
        return Err(Error::SplittingViolation { alpha, max_u });
    }
    let (plus, minus): (Vec<f64>, Vec<f64>) =
        u.values().iter().map(|&v| split_point(v, alpha)).unzip();
    Ok(SplitFlux {
        alpha,
        plus: StateField::new(*u.grid(), plus)?,
        minus: StateField::new(*u.grid(), minus)?,
    })
}

/// WENO numerical flux for a fixed scheme; reusable across stages.
#[derive(Debug, Clone)]
pub struct FluxAssembler {
    reconstructor: Reconstructor,
}

impl FluxAssembler {
    pub fn new(cfg: &WenoConfig) -> Result<Self> {
        Ok(Self {
            reconstructor: Reconstructor::new(cfg)?,
        })
    }

    pub fn from_reconstructor(reconstructor: Reconstructor) -> Self {
        Self { reconstructor }
    }

    /// `out[i] = f̂_{i+1/2}`.
    ///
    /// `f̂⁺_{i+1/2}` comes from the `f⁺` window centred at `i` and `f̂⁻_{i+1/2}`
    /// from the `f⁻` window centred at `i + 1`.
    pub fn half_point_fluxes(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len();
        let h = self.reconstructor.half_width();
        let alpha = max_abs(u);
        let padded = |sign: f64| -> Vec<f64> {
            (0..n + 2 * h)
                .map(|j| {
                    let v = u[(j + n - h) % n];
                    let (p, m) = split_point(v, alpha);
                    if sign > 0.0 {
                        p
                    } else {
                        m
                    }
                })
                .collect()
        };
        let plus = padded(1.0);
        let minus = padded(-1.0);
        let width = 2 * h + 1;
        let plus_right: Vec<f64> = (0..n)
            .map(|i| self.reconstructor.point(&plus[i..i + width], Side::RightHalf))
            .collect();
        let minus_left: Vec<f64> = (0..n)
            .map(|i| self.reconstructor.point(&minus[i..i + width], Side::LeftHalf))
            .collect();
        (0..n)
            .map(|i| plus_right[i] + minus_left[(i + 1) % n])
            .collect()
    }

    /// `out[i] = f̂_{i+1/2} - f̂_{i-1/2}`.
    pub fn flux_difference(&self, u: &[f64]) -> Vec<f64> {
        let fhat = self.half_point_fluxes(u);
        let n = fhat.len();
        (0..n).map(|i| fhat[i] - fhat[(i + n - 1) % n]).collect()
    }
}

/// Half-point fluxes `f̂_{i+1/2}` of the field `u`.
pub fn assemble_weno_flux(u: &StateField, cfg: &WenoConfig) -> Result<StateField> {
    let fluxes = FluxAssembler::new(cfg)?.half_point_fluxes(u.values());
    StateField::new(*u.grid(), fluxes)
}
