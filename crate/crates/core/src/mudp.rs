//! μDP equation through the first-order system
//! `u_t + f(u)_x + 3μ(u) q = 0`, `q = v_x`, `μ(v) − v_xx = u`,
//! with alternating fluxes `v̂ = v⁻`, `q̂ = q⁺`.

use crate::config::{Scheme, WenoConfig};
use crate::error::{Error, Result};
use crate::flux::FluxAssembler;
use crate::grid::{StateField, UniformGrid};
use crate::operator::PeriodicOperator;
use crate::reconstruction::linear::{FluxStencil, Q5_PLUS, Q7_PLUS, V5_MINUS, V7_MINUS};

/// `μ_h(u) = dx Σ u_j`.
pub fn discrete_mean(u: &StateField) -> f64 {
    u.grid().dx() * u.values().iter().sum::<f64>()
}

/// Linear flux pair for `v` and `q`; tied to the WENO order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuDpOrder {
    VQ5,
    VQ7,
}

impl MuDpOrder {
    pub fn for_scheme(scheme: Scheme) -> Self {
        match scheme {
            Scheme::Weno5Simple | Scheme::MrWeno5 => MuDpOrder::VQ5,
            Scheme::MrWeno7 => MuDpOrder::VQ7,
        }
    }

    pub fn stencils(self) -> (FluxStencil, FluxStencil) {
        match self {
            MuDpOrder::VQ5 => (V5_MINUS, Q5_PLUS),
            MuDpOrder::VQ7 => (V7_MINUS, Q7_PLUS),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MuDpOperators {
    /// `q = A v`
    pub a: PeriodicOperator,
    /// `(q̂ diff)/dx = C q`
    pub c: PeriodicOperator,
    /// `D = B − C A`, factorized; `B = dx·11ᵀ`
    pub d: PeriodicOperator,
}

fn derivative_operator(grid: &UniformGrid, st: FluxStencil) -> Result<PeriodicOperator> {
    let inv_dx = 1.0 / grid.dx();
    let stencil: Vec<(isize, f64)> = st.difference().into_iter().map(|(o, c)| (o, c * inv_dx)).collect();
    PeriodicOperator::circulant(grid.n(), &stencil)
}

pub fn build_mudp_operators(grid: &UniformGrid, order: MuDpOrder) -> Result<MuDpOperators> {
    let (v_st, q_st) = order.stencils();
    let a = derivative_operator(grid, v_st)?;
    let c = derivative_operator(grid, q_st)?;
    let d = c.compose(&a)?.scaled(-1.0).with_rank_one(grid.dx()).factorize()?;
    Ok(MuDpOperators { a, c, d })
}

fn rhs_and_q(
    flux: &FluxAssembler,
    ops: &MuDpOperators,
    dx: f64,
    u: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    if ops.d.n() != u.len() {
        return Err(Error::GridMismatch);
    }
    let v = ops.d.solve(u)?;
    let q = ops.a.apply(&v);
    let mean = dx * u.iter().sum::<f64>();
    let diff = flux.flux_difference(u);
    let rhs = diff
        .iter()
        .zip(&q)
        .map(|(d, qi)| -d / dx - 3.0 * mean * qi)
        .collect();
    Ok((rhs, q))
}

/// `du/dt = −(f̂ diff)/dx − 3 μ_h(u) q`, `q = A D⁻¹ u`.
pub fn mudp_rhs(u: &StateField, cfg: &WenoConfig, ops: &MuDpOperators) -> Result<StateField> {
    let flux = FluxAssembler::new(cfg)?;
    let (rhs, _) = rhs_and_q(&flux, ops, u.grid().dx(), u.values())?;
    StateField::new(*u.grid(), rhs)
}

#[derive(Debug, Clone)]
pub struct MuDpSolver {
    grid: UniformGrid,
    flux: FluxAssembler,
    ops: MuDpOperators,
}

impl MuDpSolver {
    pub fn new(grid: UniformGrid, cfg: &WenoConfig) -> Result<Self> {
        Ok(Self {
            grid,
            flux: FluxAssembler::new(cfg)?,
            ops: build_mudp_operators(&grid, MuDpOrder::for_scheme(cfg.scheme))?,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn operators(&self) -> &MuDpOperators {
        &self.ops
    }

    pub fn rhs(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.rhs_and_q(u)?.0)
    }

    pub fn rhs_and_q(&self, u: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        rhs_and_q(&self.flux, &self.ops, self.grid.dx(), u)
    }

    pub fn q(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.rhs_and_q(u)?.1)
    }
}
