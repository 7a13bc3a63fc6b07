//! SSP-RK3 for the PDEs, classical RK4 for ODE references, and the step policy.

use crate::config::DtMode;
use crate::error::{Error, Result};
use crate::grid::StateField;

fn check_finite(v: &[f64], stage: usize, time: f64) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteStage { stage, time })
    }
}

/// One SSP-RK3 step of `du/dt = L(u)` on raw values.
pub fn ssp_rk3_values<F>(u: &[f64], t: f64, dt: f64, mut rhs: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let l0 = rhs(u)?;
    let u1: Vec<f64> = u.iter().zip(&l0).map(|(a, l)| a + dt * l).collect();
    check_finite(&u1, 1, t)?;
    let l1 = rhs(&u1)?;
    let u2: Vec<f64> = u
        .iter()
        .zip(u1.iter().zip(&l1))
        .map(|(a, (b, l))| 0.75 * a + 0.25 * (b + dt * l))
        .collect();
    check_finite(&u2, 2, t + dt)?;
    let l2 = rhs(&u2)?;
    let out: Vec<f64> = u
        .iter()
        .zip(u2.iter().zip(&l2))
        .map(|(a, (b, l))| a / 3.0 + 2.0 / 3.0 * (b + dt * l))
        .collect();
    check_finite(&out, 3, t + 0.5 * dt)?;
    Ok(out)
}

pub fn ssp_rk3_step<F>(u: &StateField, t: f64, dt: f64, rhs: F) -> Result<StateField>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    if !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!("time step {dt} must be positive")));
    }
    StateField::new(*u.grid(), ssp_rk3_values(u.values(), t, dt, rhs)?)
}

/// Classical RK4 step of `y' = F(y)`.
pub fn rk4_step<F>(y: &[f64], dt: f64, mut f: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let axpy = |a: &[f64], h: f64, k: &[f64]| -> Vec<f64> {
        a.iter().zip(k).map(|(x, d)| x + h * d).collect()
    };
    let k1 = f(y);
    let k2 = f(&axpy(y, 0.5 * dt, &k1));
    let k3 = f(&axpy(y, 0.5 * dt, &k2));
    let k4 = f(&axpy(y, dt, &k3));
    let out: Vec<f64> = (0..y.len())
        .map(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    check_finite(&out, 4, f64::NAN)?;
    Ok(out)
}

/// `dt = cfl·dx^p` with `p` from the mode; the last step lands on `t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePolicy {
    pub cfl: f64,
    pub mode: DtMode,
    pub t_end: f64,
}

impl TimePolicy {
    pub fn new(cfl: f64, mode: DtMode, t_end: f64) -> Result<Self> {
        if !(cfl > 0.0) || !(t_end >= 0.0) || !t_end.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "time policy needs cfl > 0 and finite t_end >= 0 (cfl = {cfl}, t_end = {t_end})"
            )));
        }
        Ok(Self { cfl, mode, t_end })
    }

    pub fn dt(&self, dx: f64) -> f64 {
        self.cfl * dx.powf(self.mode.exponent())
    }

    /// Number of steps `integrate` takes on a grid with spacing `dx`.
    pub fn step_count(&self, dx: f64) -> usize {
        steps(0.0, self.t_end, self.dt(dx)).count()
    }
}

/// `(t, h)` pairs covering `[t0, t1]`; the final step absorbs round-off so no
/// sliver step is taken.
fn steps(t0: f64, t1: f64, dt: f64) -> impl Iterator<Item = (f64, f64)> {
    let mut t = t0;
    let mut done = t1 <= t0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let remaining = t1 - t;
        let h = if remaining <= dt * (1.0 + 1e-10) {
            done = true;
            remaining
        } else {
            dt
        };
        let start = t;
        t = if done { t1 } else { t + h };
        Some((start, h))
    })
}

/// Advances `u0` from 0 to `policy.t_end`; returns the final state and step count.
pub fn integrate<F>(u0: &StateField, mut rhs: F, policy: &TimePolicy) -> Result<(StateField, usize)>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let (u, n) = integrate_between(u0.values().to_vec(), 0.0, policy.t_end, policy.dt(u0.grid().dx()), &mut rhs)?;
    Ok((StateField::new(*u0.grid(), u)?, n))
}

/// Integrates through increasing output times, returning a snapshot at each.
pub fn integrate_snapshots<F>(
    u0: &StateField,
    mut rhs: F,
    policy: &TimePolicy,
    times: &[f64],
) -> Result<(Vec<(f64, StateField)>, usize)>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let dt = policy.dt(u0.grid().dx());
    let mut u = u0.values().to_vec();
    let mut t = 0.0;
    let mut total = 0;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        if target < t {
            return Err(Error::InvalidConfig(format!("snapshot times must increase ({target} < {t})")));
        }
        let (next, n) = integrate_between(u, t, target, dt, &mut rhs)?;
        u = next;
        t = target;
        total += n;
        out.push((t, StateField::new(*u0.grid(), u.clone())?));
    }
    Ok((out, total))
}

fn integrate_between<F>(mut u: Vec<f64>, t0: f64, t1: f64, dt: f64, rhs: &mut F) -> Result<(Vec<f64>, usize)>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let mut count = 0;
    for (t, h) in steps(t0, t1, dt) {
        u = ssp_rk3_values(&u, t, h, &mut *rhs)?;
        count += 1;
    }
    Ok((u, count))
}
