//! Error norms, convergence orders and oscillation metrics.

use crate::error::{Error, Result};
use crate::grid::StateField;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    pub order_l1: Option<f64>,
    pub order_linf: Option<f64>,
}

impl ErrorReport {
    pub fn new(n: usize, l1: f64, linf: f64) -> Self {
        Self {
            n,
            l1,
            linf,
            order_l1: None,
            order_linf: None,
        }
    }
}

/// `(dx Σ|a − b|, max|a − b|)`.
pub fn error_norms(num: &StateField, reference: &StateField) -> Result<(f64, f64)> {
    if !num.grid().same_as(reference.grid()) {
        return Err(Error::GridMismatch);
    }
    let (sum, max) = num
        .values()
        .iter()
        .zip(reference.values())
        .fold((0.0, 0.0_f64), |(s, m), (a, b)| {
            let d = (a - b).abs();
            (s + d, m.max(d))
        });
    Ok((num.grid().dx() * sum, max))
}

/// Fills in `log₂(E_N / E_{2N})` for consecutive rows.
pub fn convergence_orders(reports: &[ErrorReport]) -> Vec<ErrorReport> {
    let order = |coarse: f64, fine: f64, nc: usize, nf: usize| (coarse / fine).ln() / (nf as f64 / nc as f64).ln();
    let mut out = reports.to_vec();
    for i in 1..out.len() {
        let (c, f) = (reports[i - 1], reports[i]);
        out[i].order_l1 = Some(order(c.l1, f.l1, c.n, f.n));
        out[i].order_linf = Some(order(c.linf, f.linf, c.n, f.n));
    }
    out
}

/// Keeps the points of a fine field that coincide with a coarse grid of `n` points.
pub fn restrict(fine: &StateField, n: usize) -> Result<StateField> {
    let nf = fine.len();
    if n == 0 || !nf.is_multiple_of(n) {
        return Err(Error::InvalidGrid(format!("{nf} points do not restrict to {n}")));
    }
    let g = fine.grid();
    let coarse = crate::grid::UniformGrid::new(g.x_min(), g.x_max(), n)?;
    let stride = nf / n;
    StateField::new(coarse, (0..n).map(|i| fine.values()[i * stride]).collect())
}

/// Norms of `num_N − restrict(num_2N)`.
pub fn self_convergence(num_n: &StateField, num_2n: &StateField) -> Result<(f64, f64)> {
    error_norms(num_n, &restrict(num_2n, num_n.len())?)
}

/// `max(0, max(num) − hi, lo − min(num))`.
pub fn overshoot(num: &StateField, lo: f64, hi: f64) -> f64 {
    let (mn, mx) = num
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    0.0f64.max(mx - hi).max(lo - mn)
}

/// Largest violation of monotonicity on the periodic index range
/// `[start, start + len)`: the data must rise up to `peak` and fall after it
/// (`peak = start` for a purely falling section, `start + len − 1` for rising).
pub fn monotonicity_violation(values: &[f64], start: isize, len: usize, peak: isize) -> f64 {
    let n = values.len() as isize;
    let at = |i: isize| values[i.rem_euclid(n) as usize];
    let mut worst = 0.0f64;
    for i in start..start + len as isize - 1 {
        let step = at(i + 1) - at(i);
        let bad = if i < peak { -step } else { step };
        worst = worst.max(bad);
    }
    worst
}

/// Maximum of `|u_{i+1} − u_i|/dx` over the periodic grid.
pub fn max_gradient(u: &StateField) -> f64 {
    let v = u.values();
    let n = v.len();
    (0..n)
        .map(|i| (v[(i + 1) % n] - v[i]).abs())
        .fold(0.0, f64::max)
        / u.grid().dx()
}
