//! Smooth periodic traveling-wave profile `φ` with
//! `(φ′)² = 2μ₀(M − φ)(φ − m)/(c − φ)`, used as μDP initial data.
//!
//! With `φ = (M+m)/2 − (M−m)/2·cos ϑ` the right-hand side factorizes and
//! `ϑ′ = √(2μ₀/(c − φ))`, which has no turning points; `ϑ` advances by `2π`
//! over one period, so the branch switching of `φ′ = ±√…` never arises.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{StateField, UniformGrid};

pub const DEFAULT_PROFILE_CELLS: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuSmoothParams {
    pub crest: f64,
    pub trough: f64,
    pub speed: f64,
    pub mu0: f64,
    pub period: f64,
    /// `φ(anchor_x) = (crest + trough)/2`, on the rising side.
    pub anchor_x: f64,
}

impl Default for MuSmoothParams {
    fn default() -> Self {
        Self {
            crest: 1.5,
            trough: 0.5,
            speed: 2.0,
            mu0: 2.55499933801271,
            period: 2.73321849515629,
            anchor_x: 0.796433828683979,
        }
    }
}

impl MuSmoothParams {
    pub fn validate(&self) -> Result<()> {
        // c − φ must stay positive on [trough, crest]
        if !(self.trough < self.crest && self.crest < self.speed) || !(self.mu0 > 0.0) || !(self.period > 0.0) {
            return Err(Error::Profile(format!("inadmissible parameters {self:?}")));
        }
        Ok(())
    }

    fn mid(&self) -> f64 {
        0.5 * (self.crest + self.trough)
    }

    fn amp(&self) -> f64 {
        0.5 * (self.crest - self.trough)
    }

    /// `dϑ/dx`
    fn angle_rate(&self, theta: f64) -> f64 {
        (2.0 * self.mu0 / (self.speed - self.mid() + self.amp() * theta.cos())).sqrt()
    }

    fn value(&self, theta: f64) -> f64 {
        self.mid() - self.amp() * theta.cos()
    }
}

/// Profile samples at `x_j = −T/2 + j·T/n_cells`, `j = 0..=n_cells`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothProfile {
    pub params: MuSmoothParams,
    pub n_cells: usize,
    pub values: Vec<f64>,
}

impl SmoothProfile {
    pub fn x_min(&self) -> f64 {
        -0.5 * self.params.period
    }

    pub fn dx(&self) -> f64 {
        self.params.period / self.n_cells as f64
    }

    /// Periodic grid with `n` points spanning one period.
    pub fn grid(&self, n: usize) -> Result<UniformGrid> {
        UniformGrid::new(-0.5 * self.params.period, 0.5 * self.params.period, n)
    }

    /// Samples on a grid of `n` points; requires `n | n_cells`.
    pub fn sample(&self, n: usize) -> Result<StateField> {
        if n == 0 || !self.n_cells.is_multiple_of(n) {
            return Err(Error::Profile(format!(
                "{n} points do not nest in {} profile cells",
                self.n_cells
            )));
        }
        let stride = self.n_cells / n;
        let grid = self.grid(n)?;
        StateField::new(grid, (0..n).map(|i| self.values[i * stride]).collect())
    }

    /// `|φ(T/2) − φ(−T/2)|`.
    pub fn closure_gap(&self) -> f64 {
        (self.values[self.n_cells] - self.values[0]).abs()
    }
}

fn rk4_angle(p: &MuSmoothParams, theta: f64, h: f64) -> f64 {
    let k1 = p.angle_rate(theta);
    let k2 = p.angle_rate(theta + 0.5 * h * k1);
    let k3 = p.angle_rate(theta + 0.5 * h * k2);
    let k4 = p.angle_rate(theta + h * k3);
    theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates the profile ODE with RK4 from the anchor over `[−T/2, T/2]`.
pub fn mu_smooth_profile(params: &MuSmoothParams, n_cells: usize) -> Result<SmoothProfile> {
    params.validate()?;
    if n_cells < 2 {
        return Err(Error::Profile(format!("{n_cells} cells")));
    }
    let x_min = -0.5 * params.period;
    let h = params.period / n_cells as f64;
    let start = ((params.anchor_x - x_min) / h).floor();
    if !(0.0..n_cells as f64).contains(&start) {
        return Err(Error::Profile("anchor outside the period".into()));
    }
    let j0 = start as usize;
    let mut theta = vec![0.0; n_cells + 1];
    theta[j0] = rk4_angle(params, std::f64::consts::FRAC_PI_2, x_min + j0 as f64 * h - params.anchor_x);
    for j in j0..n_cells {
        theta[j + 1] = rk4_angle(params, theta[j], h);
    }
    for j in (0..j0).rev() {
        theta[j] = rk4_angle(params, theta[j + 1], -h);
    }
    // one period of x carries ϑ through exactly 2π
    let sweep = theta[n_cells] - theta[0];
    if (sweep - 2.0 * std::f64::consts::PI).abs() > 1e-8 {
        return Err(Error::Profile(format!(
            "angle sweeps {sweep} over one period instead of 2π; period and μ₀ disagree"
        )));
    }
    let values: Vec<f64> = theta.iter().map(|&t| params.value(t)).collect();
    if values.iter().any(|v| !(params.trough - 1e-12..=params.crest + 1e-12).contains(v)) {
        return Err(Error::Profile("profile left [trough, crest]".into()));
    }
    Ok(SmoothProfile {
        params: *params,
        n_cells,
        values,
    })
}

fn cache_header(params: &MuSmoothParams, n_cells: usize) -> String {
    format!(
        "mu-smooth-profile v1 n_cells={n_cells} crest={:e} trough={:e} speed={:e} mu0={:e} period={:e} anchor={:e}\n",
        params.crest, params.trough, params.speed, params.mu0, params.period, params.anchor_x
    )
}

/// Reads the profile from `path` when its header matches, otherwise generates
/// and writes it (text header line followed by little-endian `f64` values).
pub fn load_or_generate_profile(path: &Path, params: &MuSmoothParams, n_cells: usize) -> Result<SmoothProfile> {
    let header = cache_header(params, n_cells);
    if let Ok(bytes) = fs::read(path) {
        let body = bytes.strip_prefix(header.as_bytes());
        if let Some(body) = body.filter(|b| b.len() == 8 * (n_cells + 1)) {
            let values = body
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
                .collect();
            return Ok(SmoothProfile {
                params: *params,
                n_cells,
                values,
            });
        }
        log::warn!("ignoring stale profile cache {}", path.display());
    }
    let profile = mu_smooth_profile(params, n_cells)?;
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut file = fs::File::create(path)?;
    file.write_all(header.as_bytes())?;
    let mut buf = Vec::with_capacity(8 * profile.values.len());
    for v in &profile.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    file.write_all(&buf)?;
    Ok(profile)
}
