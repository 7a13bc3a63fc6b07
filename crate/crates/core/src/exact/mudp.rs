//! μDP peakons and shocks on the unit circle, driven by their particle ODEs.

use crate::error::{Error, Result};
use crate::time::rk4_step;

/// Step used for the particle ODEs.
pub const PARTICLE_DT: f64 = 1e-4;

/// Reduces `x` into `[0, 1)`.
#[inline]
fn unit_wrap(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Periodic Green's function `g(x) = x(x−1)/2 + 13/12` on `[0, 1)`.
pub fn mu_green(x: f64) -> f64 {
    let y = unit_wrap(x);
    0.5 * y * (y - 1.0) + 13.0 / 12.0
}

/// `g′(x) = x − 1/2` on `(0, 1)`, and `0` at the kink.
pub fn mu_green_deriv(x: f64) -> f64 {
    let y = unit_wrap(x);
    if y == 0.0 {
        0.0
    } else {
        y - 0.5
    }
}

/// Peakon (`s = None`) or shock (`s = Some`) particle variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState {
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
    pub s: Option<Vec<f64>>,
}

impl ParticleState {
    pub fn peakons(psi: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        Self::build(psi, phi, None)
    }

    pub fn shocks(psi: Vec<f64>, phi: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        Self::build(psi, phi, Some(s))
    }

    fn build(psi: Vec<f64>, phi: Vec<f64>, s: Option<Vec<f64>>) -> Result<Self> {
        let m = psi.len();
        if m == 0 || phi.len() != m || s.as_ref().is_some_and(|s| s.len() != m) {
            return Err(Error::InvalidConfig("particle arrays must be non-empty and equally long".into()));
        }
        let all = psi.iter().chain(&phi).chain(s.iter().flatten());
        if let Some(i) = all.clone().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index: i });
        }
        Ok(Self {
            psi,
            phi: phi.into_iter().map(unit_wrap).collect(),
            s,
        })
    }

    pub fn m(&self) -> usize {
        self.psi.len()
    }

    fn flatten(&self) -> Vec<f64> {
        let mut y = self.psi.clone();
        y.extend(&self.phi);
        if let Some(s) = &self.s {
            y.extend(s);
        }
        y
    }

    fn unflatten(&self, y: &[f64]) -> Self {
        let m = self.m();
        Self {
            psi: y[..m].to_vec(),
            phi: y[m..2 * m].to_vec(),
            s: self.s.as_ref().map(|_| y[2 * m..3 * m].to_vec()),
        }
    }
}

/// Time derivatives of the peakon system:
/// `φ_i′ = Σ ψ_j g(φ_i − φ_j)`, `ψ_i′ = −2 Σ ψ_i ψ_j g′(φ_i − φ_j)`.
pub fn mu_peakon_ode_rhs(state: &ParticleState) -> ParticleState {
    let m = state.m();
    let mut dpsi = vec![0.0; m];
    let mut dphi = vec![0.0; m];
    for i in 0..m {
        for j in 0..m {
            let d = state.phi[i] - state.phi[j];
            dphi[i] += state.psi[j] * mu_green(d);
            dpsi[i] -= 2.0 * state.psi[i] * state.psi[j] * mu_green_deriv(d);
        }
    }
    ParticleState {
        psi: dpsi,
        phi: dphi,
        s: None,
    }
}

/// Time derivatives of the shock system, term for term:
/// `φ_i′ = Σ (ψ_j g + s_i g′)(φ_i − φ_j)`, `ψ_i′ = 2 Σ (ψ_j − ψ_iψ_j g′)`,
/// `s_i′ = −Σ s_i ψ_j g′`.
///
/// For a single shock `ψ′ = 2ψ`, so `ψ` and with it the mean of the field
/// grow like `e^{2t}`; the system is kept as stated rather than altered.
pub fn mu_shock_ode_rhs(state: &ParticleState) -> ParticleState {
    let m = state.m();
    let zeros = vec![0.0; m];
    let s = state.s.as_deref().unwrap_or(&zeros);
    let mut dpsi = vec![0.0; m];
    let mut dphi = vec![0.0; m];
    let mut ds = vec![0.0; m];
    for i in 0..m {
        for j in 0..m {
            let d = state.phi[i] - state.phi[j];
            let (g, gp) = (mu_green(d), mu_green_deriv(d));
            dphi[i] += state.psi[j] * g + s[i] * gp;
            dpsi[i] += 2.0 * (state.psi[j] - state.psi[i] * state.psi[j] * gp);
            ds[i] -= s[i] * state.psi[j] * gp;
        }
    }
    ParticleState {
        psi: dpsi,
        phi: dphi,
        s: Some(ds),
    }
}

/// `u(x) = Σ ψ_i g(x − φ_i)`.
pub fn mu_peakon_field(x: f64, state: &ParticleState) -> f64 {
    state
        .psi
        .iter()
        .zip(&state.phi)
        .map(|(psi, phi)| psi * mu_green(x - phi))
        .sum()
}

/// `u(x) = Σ (ψ_i g + s_i g′)(x − φ_i)`.
pub fn mu_shock_field(x: f64, state: &ParticleState) -> f64 {
    let s = state.s.as_deref();
    (0..state.m())
        .map(|i| {
            let d = x - state.phi[i];
            state.psi[i] * mu_green(d) + s.map_or(0.0, |s| s[i] * mu_green_deriv(d))
        })
        .sum()
}

/// Advances the particles to time `t` with RK4 steps of at most `dt`.
pub fn evolve_particles(state: &ParticleState, t: f64, dt: f64) -> Result<ParticleState> {
    if !(t >= 0.0) || !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!("evolve to t = {t} with dt = {dt}")));
    }
    let shock = state.s.is_some();
    let mut y = state.flatten();
    let template = state.clone();
    let f = |y: &[f64]| {
        let st = template.unflatten(y);
        let d = if shock { mu_shock_ode_rhs(&st) } else { mu_peakon_ode_rhs(&st) };
        d.flatten()
    };
    let steps = (t / dt).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { t / steps as f64 };
    for _ in 0..steps {
        y = rk4_step(&y, h, f)?;
    }
    let mut out = template.unflatten(&y);
    out.phi.iter_mut().for_each(|p| *p = unit_wrap(*p));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn green_values() {
        assert_eq!(mu_green(0.0), 13.0 / 12.0);
        assert_eq!(mu_green_deriv(0.0), 0.0);
        assert!((mu_green(0.5) - 23.0 / 24.0).abs() < 1e-15);
        assert!((mu_green(1.3) - mu_green(0.3)).abs() < 1e-15);
        assert!((mu_green(-0.2) - mu_green(0.8)).abs() < 1e-15);
        // ∫₀¹ g = 1 (Simpson is exact for quadratics)
        let simpson = (mu_green(0.0) + 4.0 * mu_green(0.5) + 13.0 / 12.0) / 6.0;
        assert!((simpson - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_peakon_reduction() {
        let st = ParticleState::peakons(vec![0.333], vec![-0.5]).unwrap();
        assert_eq!(st.phi[0], 0.5);
        let d = mu_peakon_ode_rhs(&st);
        assert_eq!(d.psi[0], 0.0);
        assert!((d.phi[0] - 0.360_75).abs() < 1e-15);
        let later = evolve_particles(&st, 10.0, PARTICLE_DT).unwrap();
        assert_eq!(later.psi[0], 0.333);
        let expected = (0.5 + 10.0 * 0.360_75f64).rem_euclid(1.0);
        assert!((later.phi[0] - expected).abs() < 1e-9);
    }

    #[test]
    fn symmetric_pair_keeps_amplitudes() {
        let st = ParticleState::peakons(vec![0.2, 0.2], vec![0.1, 0.6]).unwrap();
        let d = mu_peakon_ode_rhs(&st);
        assert!(d.psi.iter().all(|v| v.abs() < 1e-16));
    }

    #[test]
    fn single_shock_reduction() {
        let st = ParticleState::shocks(vec![0.333], vec![0.1], vec![0.1]).unwrap();
        let d = mu_shock_ode_rhs(&st);
        assert!((d.phi[0] - 0.333 * 13.0 / 12.0).abs() < 1e-16);
        assert!((d.psi[0] - 2.0 * 0.333).abs() < 1e-16);
        assert_eq!(d.s.unwrap()[0], 0.0);
        let later = evolve_particles(&st, 1.0, PARTICLE_DT).unwrap();
        assert!((later.psi[0] - 0.333 * 2f64.exp()).abs() < 1e-10);
        assert_eq!(later.s.unwrap()[0], 0.1);
    }

    #[test]
    fn fields() {
        let st = ParticleState::peakons(vec![0.333], vec![0.25]).unwrap();
        assert!((mu_peakon_field(0.25, &st) - 0.333 * 13.0 / 12.0).abs() < 1e-15);
        assert!((mu_peakon_field(0.7, &st) - mu_peakon_field(1.7, &st)).abs() < 1e-15);
        let sh = ParticleState::shocks(vec![0.3], vec![0.4], vec![0.2]).unwrap();
        let jump = mu_shock_field(0.4 + 1e-12, &sh) - mu_shock_field(0.4 - 1e-12, &sh);
        assert!((jump + 0.2).abs() < 1e-10);
    }

    #[test]
    fn halving_the_step_changes_little() {
        let st = ParticleState::peakons(vec![0.1, 0.08], vec![0.4, 0.1]).unwrap();
        let a = evolve_particles(&st, 10.0, PARTICLE_DT).unwrap();
        let b = evolve_particles(&st, 10.0, PARTICLE_DT / 2.0).unwrap();
        for (x, y) in a.psi.iter().chain(&a.phi).zip(b.psi.iter().chain(&b.phi)) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
