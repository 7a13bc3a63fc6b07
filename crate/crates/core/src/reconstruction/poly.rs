//! Local polynomials in the scaled coordinate `s = (x - x_i) / dx`.
//!
//! Cell `j` of the window occupies `[j - 1/2, j + 1/2]` in `s`, and the target
//! cell is `[-1/2, 1/2]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::DenseLu;

/// Coefficient capacity: degree six (seventh-order stencil) plus one spare.
pub const MAX_COEFFS: usize = 8;

/// `p(s) = Σ c_a s^a` with at most [`MAX_COEFFS`] coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalPolynomial {
    coeffs: [f64; MAX_COEFFS],
    len: usize,
}

impl LocalPolynomial {
    pub fn new(coeffs: &[f64]) -> Self {
        assert!(
            !coeffs.is_empty() && coeffs.len() <= MAX_COEFFS,
            "polynomial needs 1..={MAX_COEFFS} coefficients, got {}",
            coeffs.len()
        );
        let mut c = [0.0; MAX_COEFFS];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self {
            coeffs: c,
            len: coeffs.len(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(&[c])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Self::new(&[c0, c1])
    }

    /// Nominal degree (number of stored coefficients minus one).
    pub fn degree(&self) -> usize {
        self.len - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.len]
    }

    #[inline]
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs[..self.len]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * s + c)
    }

    /// Exact `∫_a^b p(s) ds`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let e = (k + 1) as i32;
                c * (b.powi(e) - a.powi(e)) / e as f64
            })
            .sum()
    }

    /// Average over window cell `j`, i.e. over `[j - 1/2, j + 1/2]`.
    pub fn cell_average(&self, j: isize) -> f64 {
        let j = j as f64;
        self.integrate(j - 0.5, j + 0.5)
    }

    pub fn derivative(&self) -> Self {
        if self.len == 1 {
            return Self::constant(0.0);
        }
        let mut c = [0.0; MAX_COEFFS];
        for k in 1..self.len {
            c[k - 1] = k as f64 * self.coeffs[k];
        }
        Self {
            coeffs: c,
            len: self.len - 1,
        }
    }

    /// `self += a * other`, growing the coefficient list if needed.
    #[inline]
    pub fn axpy(&mut self, a: f64, other: &LocalPolynomial) {
        for k in 0..other.len {
            self.coeffs[k] += a * other.coeffs[k];
        }
        self.len = self.len.max(other.len);
    }

    #[inline]
    pub fn scaled(&self, a: f64) -> Self {
        let mut out = *self;
        for c in &mut out.coeffs[..out.len] {
            *c *= a;
        }
        out
    }
}

/// `∫_{-1/2}^{1/2} s^p ds`.
fn centered_moment(p: usize) -> f64 {
    if p % 2 == 1 {
        0.0
    } else {
        2.0 * 0.5_f64.powi(p as i32 + 1) / (p + 1) as f64
    }
}

fn falling(a: usize, l: usize) -> f64 {
    (a + 1 - l..=a).map(|v| v as f64).product()
}

/// Gram matrix `G_ab = Σ_{l≥1} ∫_{-1/2}^{1/2} (d^l s^a)(d^l s^b) ds`.
fn smoothness_gram() -> &'static [[f64; MAX_COEFFS]; MAX_COEFFS] {
    static GRAM: OnceLock<[[f64; MAX_COEFFS]; MAX_COEFFS]> = OnceLock::new();
    GRAM.get_or_init(|| {
        let mut g = [[0.0; MAX_COEFFS]; MAX_COEFFS];
        for (a, row) in g.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = (1..=a.min(b))
                    .map(|l| falling(a, l) * falling(b, l) * centered_moment(a + b - 2 * l))
                    .sum();
            }
        }
        g
    })
}

/// Jiang-Shu smoothness measure of `p` on the target cell.
///
/// In physical coordinates this is `Σ_l dx^{2l-1} ∫_{I_i} (d^l p / dx^l)^2 dx`;
/// in the scaled coordinate the powers of `dx` cancel and it is evaluated
/// exactly as a quadratic form in the coefficients.
#[inline]
pub fn smoothness_indicator(p: &LocalPolynomial) -> f64 {
    let g = smoothness_gram();
    let c = p.coeffs();
    let mut beta = 0.0;
    for a in 1..c.len() {
        if c[a] == 0.0 {
            continue;
        }
        let mut row = 0.0;
        for b in 1..c.len() {
            row += g[a][b] * c[b];
        }
        beta += c[a] * row;
    }
    beta
}

/// Precomputed inverse of the cell-average moment system for a fixed set of
/// contiguous offsets.
#[derive(Debug, Clone)]
pub struct CellAverageFit {
    first: isize,
    m: usize,
    inverse: Vec<f64>,
}

impl CellAverageFit {
    /// Fit on cells `first, first + 1, ..., first + m - 1`.
    pub fn new(first: isize, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_COEFFS {
            return Err(Error::InvalidConfig(format!(
                "cell-average fit needs 1..={MAX_COEFFS} cells, got {m}"
            )));
        }
        let mut moments = vec![0.0; m * m];
        for row in 0..m {
            let j = (first + row as isize) as f64;
            for a in 0..m {
                let e = (a + 1) as i32;
                moments[row * m + a] =
                    ((j + 0.5).powi(e) - (j - 0.5).powi(e)) / e as f64;
            }
        }
        let inverse = DenseLu::new(m, moments)?.inverse();
        Ok(Self { first, m, inverse })
    }

    /// Central stencil `-h..=h`.
    pub fn central(half_width: usize) -> Result<Self> {
        Self::new(-(half_width as isize), 2 * half_width + 1)
    }

    pub fn first(&self) -> isize {
        self.first
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Polynomial whose cell averages over the stencil equal `values`.
    #[inline]
    pub fn fit(&self, values: &[f64]) -> LocalPolynomial {
        debug_assert_eq!(values.len(), self.m);
        let mut c = [0.0; MAX_COEFFS];
        for (a, ca) in c.iter_mut().enumerate().take(self.m) {
            let row = &self.inverse[a * self.m..(a + 1) * self.m];
            *ca = row.iter().zip(values).map(|(r, v)| r * v).sum();
        }
        LocalPolynomial {
            coeffs: c,
            len: self.m,
        }
    }
}

/// Unique polynomial of degree `m - 1` whose averages over the cells at
/// `offsets` (distinct, contiguous) equal `values`.
pub fn fit_poly_cell_averages(values: &[f64], offsets: &[isize]) -> Result<LocalPolynomial> {
    if values.len() != offsets.len() {
        return Err(Error::InvalidConfig(format!(
            "{} values for {} offsets",
            values.len(),
            offsets.len()
        )));
    }
    let mut order: Vec<usize> = (0..offsets.len()).collect();
    order.sort_by_key(|&i| offsets[i]);
    let sorted: Vec<isize> = order.iter().map(|&i| offsets[i]).collect();
    if sorted.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::InvalidConfig(format!(
            "offsets {offsets:?} are not distinct and contiguous"
        )));
    }
    let fit = CellAverageFit::new(sorted[0], sorted.len())?;
    let ordered: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    Ok(fit.fit(&ordered))
}
