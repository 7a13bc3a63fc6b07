//! Polynomial reconstruction: fixed linear fluxes for the auxiliary variables
//! and the two WENO recipes for the split nonlinear flux.
//!
//! Finite difference WENO treats the point values `f±(u_j)` as cell averages
//! of an underlying function; every candidate polynomial is fitted to those
//! averages and evaluated at the target half point.

pub mod linear;
pub mod multires;
pub mod poly;
pub mod simple;

pub use linear::{
    linear_flux_q5_plus, linear_flux_q6, linear_flux_q7_plus, linear_flux_q8,
    linear_flux_v5_minus, linear_flux_v7_minus, FluxStencil,
};
pub use multires::{mr_beta1, mr_weno_point, MrWeno};
pub use poly::{fit_poly_cell_averages, smoothness_indicator, CellAverageFit, LocalPolynomial};
pub use simple::{simple_weno_point, SimpleWeno};

use crate::config::{Scheme, WenoConfig};
use crate::error::Result;

/// Which half point of the target cell to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x_{i+1/2}`
    RightHalf,
    /// `x_{i-1/2}`
    LeftHalf,
}

impl Side {
    /// Position in the scaled coordinate.
    pub fn offset(self) -> f64 {
        match self {
            Side::RightHalf => 0.5,
            Side::LeftHalf => -0.5,
        }
    }
}

/// Either WENO recipe behind one interface.
#[derive(Debug, Clone)]
pub enum Reconstructor {
    Simple(SimpleWeno),
    MultiResolution(MrWeno),
}

impl Reconstructor {
    pub fn new(cfg: &WenoConfig) -> Result<Self> {
        Ok(match cfg.scheme {
            Scheme::Weno5Simple => Reconstructor::Simple(SimpleWeno::from_config(cfg)?),
            Scheme::MrWeno5 | Scheme::MrWeno7 => {
                Reconstructor::MultiResolution(MrWeno::from_config(cfg)?)
            }
        })
    }

    /// Window half width: the window is `w[i-h..=i+h]`.
    pub fn half_width(&self) -> usize {
        match self {
            Reconstructor::Simple(_) => 2,
            Reconstructor::MultiResolution(mr) => mr.k(),
        }
    }

    #[inline]
    pub fn point(&self, w: &[f64], side: Side) -> f64 {
        match self {
            Reconstructor::Simple(s) => s.point(w, side),
            Reconstructor::MultiResolution(m) => m.point(w, side),
        }
    }

    /// Final polynomial and its nonlinear weights.
    pub fn reconstruct(&self, w: &[f64]) -> (LocalPolynomial, Vec<f64>) {
        match self {
            Reconstructor::Simple(s) => {
                let (p, omega) = s.reconstruct(w);
                (p, omega.to_vec())
            }
            Reconstructor::MultiResolution(m) => m.reconstruct(w),
        }
    }

    #[doc(hidden)]
    pub fn inject_linear_weights(self) -> Self {
        match self {
            Reconstructor::Simple(s) => Reconstructor::Simple(s.inject_linear_weights()),
            Reconstructor::MultiResolution(m) => {
                Reconstructor::MultiResolution(m.inject_linear_weights())
            }
        }
    }
}
