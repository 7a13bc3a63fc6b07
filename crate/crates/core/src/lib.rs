//! Finite difference WENO schemes with unequal-sized sub-stencils for the
//! Degasperis-Procesi (DP) and μ-Degasperis-Procesi (μDP) equations.
//!
//! The DP equation is solved in hyperbolic-elliptic form
//! `u_t + (u²/2)_x + q = 0`, `q - q_xx = 3 (u²/2)_x`; the μDP equation through
//! a first-order system whose elliptic part involves the mean `μ(u) = ∫u`.

// `!(x > 0.0)` is used deliberately so NaN is rejected; index loops mirror the banded algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod config;
pub mod diagnostics;
pub mod dp;
pub mod error;
pub mod exact;
pub mod flux;
pub mod grid;
pub mod linalg;
pub mod mudp;
pub mod operator;
pub mod reconstruction;
pub mod time;

pub use config::{AlphaMode, DtMode, Scheme, WenoConfig};
pub use error::{Error, Result};
pub use grid::{make_grid, sample_field, StateField, UniformGrid};
