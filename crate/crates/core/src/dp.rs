//! DP equation as the hyperbolic-elliptic system
//! `u_t + f(u)_x + q = 0`, `q − q_xx = 3 f(u)_x`, `f(u) = u²/2`.

use crate::config::{Scheme, WenoConfig};
use crate::error::{Error, Result};
use crate::flux::FluxAssembler;
use crate::grid::{StateField, UniformGrid};
use crate::operator::PeriodicOperator;
use crate::reconstruction::linear::{FluxStencil, Q6, Q8};

/// Linear flux used for `q_xx`; tied to the WENO order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticOrder {
    Q6,
    Q8,
}

impl EllipticOrder {
    pub fn for_scheme(scheme: Scheme) -> Self {
        match scheme {
            Scheme::Weno5Simple | Scheme::MrWeno5 => EllipticOrder::Q6,
            Scheme::MrWeno7 => EllipticOrder::Q8,
        }
    }

    pub fn stencil(self) -> FluxStencil {
        match self {
            EllipticOrder::Q6 => Q6,
            EllipticOrder::Q8 => Q8,
        }
    }
}

/// `A = I − D₂/dx²`, factorized.
pub fn build_dp_elliptic(grid: &UniformGrid, order: EllipticOrder) -> Result<PeriodicOperator> {
    let inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    let mut stencil: Vec<(isize, f64)> = order
        .stencil()
        .difference()
        .into_iter()
        .map(|(o, c)| (o, -c * inv_dx2))
        .collect();
    stencil.push((0, 1.0));
    PeriodicOperator::circulant(grid.n(), &stencil)?.factorize()
}

pub fn solve_elliptic(a: &PeriodicOperator, rhs: &StateField) -> Result<StateField> {
    if a.n() != rhs.len() {
        return Err(Error::GridMismatch);
    }
    StateField::new(*rhs.grid(), a.solve(rhs.values())?)
}

/// `du/dt = −(f̂_{i+1/2} − f̂_{i−1/2})/dx − q_i`.
pub fn dp_rhs(u: &StateField, cfg: &WenoConfig, a: &PeriodicOperator) -> Result<StateField> {
    let flux = FluxAssembler::new(cfg)?;
    let (rhs, _) = rhs_and_q(&flux, a, u.grid().dx(), u.values())?;
    StateField::new(*u.grid(), rhs)
}

fn rhs_and_q(
    flux: &FluxAssembler,
    a: &PeriodicOperator,
    dx: f64,
    u: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.n() != u.len() {
        return Err(Error::GridMismatch);
    }
    let diff = flux.flux_difference(u);
    let source: Vec<f64> = diff.iter().map(|d| 3.0 * d / dx).collect();
    let q = a.solve(&source)?;
    let rhs = diff.iter().zip(&q).map(|(d, qi)| -d / dx - qi).collect();
    Ok((rhs, q))
}

/// DP semi-discretization with the flux reconstruction and the factorized
/// elliptic operator built once.
#[derive(Debug, Clone)]
pub struct DpSolver {
    grid: UniformGrid,
    flux: FluxAssembler,
    elliptic: PeriodicOperator,
}

impl DpSolver {
    pub fn new(grid: UniformGrid, cfg: &WenoConfig) -> Result<Self> {
        Ok(Self {
            grid,
            flux: FluxAssembler::new(cfg)?,
            elliptic: build_dp_elliptic(&grid, EllipticOrder::for_scheme(cfg.scheme))?,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn elliptic(&self) -> &PeriodicOperator {
        &self.elliptic
    }

    pub fn rhs(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.rhs_and_q(u)?.0)
    }

    pub fn rhs_and_q(&self, u: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        rhs_and_q(&self.flux, &self.elliptic, self.grid.dx(), u)
    }

    /// The auxiliary variable `q` for the state `u`.
    pub fn q(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.rhs_and_q(u)?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample_field};
    use std::f64::consts::PI;

    #[test]
    fn constants_pass_through() {
        let g = make_grid(0.0, 1.0, 32).unwrap();
        for order in [EllipticOrder::Q6, EllipticOrder::Q8] {
            let a = build_dp_elliptic(&g, order).unwrap();
            let ones = vec![1.0; 32];
            for v in a.apply(&ones) {
                assert!((v - 1.0).abs() < 1e-9);
            }
            for v in a.solve(&ones).unwrap() {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn symbol_on_a_sine() {
        // (A q)_i → (1 + 4π²) q_i
        let err = |n: usize| {
            let g = make_grid(0.0, 1.0, n).unwrap();
            let a = build_dp_elliptic(&g, EllipticOrder::Q6).unwrap();
            let q = sample_field(&g, |x| (2.0 * PI * x).sin()).unwrap();
            a.apply(q.values())
                .iter()
                .zip(q.values())
                .map(|(aq, qi)| (aq - (1.0 + 4.0 * PI * PI) * qi).abs())
                .fold(0.0, f64::max)
        };
        let order = (err(20) / err(40)).log2();
        assert!(order > 5.5, "{order}");
    }

    #[test]
    fn rhs_is_conservative() {
        let g = make_grid(-10.0, 10.0, 128).unwrap();
        let u = sample_field(&g, |x| (-x.abs()).exp() + 0.3 * (x / 2.0).sin()).unwrap();
        for scheme in Scheme::ALL {
            let cfg = WenoConfig::new(scheme);
            let solver = DpSolver::new(g, &cfg).unwrap();
            let r = solver.rhs(u.values()).unwrap();
            let total: f64 = r.iter().sum();
            assert!(total.abs() <= 1e-12 * 128.0, "{scheme}: {total}");
            let constant = solver.rhs(&vec![0.7; 128]).unwrap();
            assert!(constant.iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn free_function_matches_solver() {
        let g = make_grid(-5.0, 5.0, 64).unwrap();
        let u = sample_field(&g, |x| (-x * x).exp()).unwrap();
        let cfg = WenoConfig::new(Scheme::MrWeno5);
        let a = build_dp_elliptic(&g, EllipticOrder::Q6).unwrap();
        let r = dp_rhs(&u, &cfg, &a).unwrap();
        let s = DpSolver::new(g, &cfg).unwrap().rhs(u.values()).unwrap();
        assert_eq!(r.values(), &s[..]);
    }
}
