//! Uniform periodic grids and the point-value fields that live on them.

use crate::error::{Error, Result};

/// Smallest admissible point count. The seventh-order multi-resolution window
/// spans seven points and the half-point fluxes reach one further.
pub const MIN_POINTS: usize = 9;

/// Periodic 1-D grid with `n` points `x_i = x_min + i dx`, `i = 0..n`.
///
/// The right end point `x_max` is identified with `x_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
    dx: f64,
}

impl UniformGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "degenerate interval [{x_min}, {x_max}]"
            )));
        }
        if n < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{n} points is narrower than the widest stencil (need at least {MIN_POINTS})"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            dx: (x_max - x_min) / n as f64,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Period of the domain, `x_max - x_min`.
    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Abscissa of point `i` (0-based).
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Maps any signed index onto `0..n` by periodic wrap.
    #[inline]
    pub fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.n as isize) as usize
    }

    /// Whether `other` has the same point set (up to rounding in the bounds).
    pub fn same_as(&self, other: &UniformGrid) -> bool {
        self.n == other.n
            && (self.x_min - other.x_min).abs() <= 1e-12 * self.length()
            && (self.x_max - other.x_max).abs() <= 1e-12 * self.length()
    }
}

/// Validating constructor used by the experiment runner.
pub fn make_grid(x_min: f64, x_max: f64, n: usize) -> Result<UniformGrid> {
    UniformGrid::new(x_min, x_max, n)
}

/// Point values on a [`UniformGrid`]: `u_i`, `q_i`, `v_i` or flux arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct StateField {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl StateField {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::LengthMismatch {
                expected: grid.n(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: UniformGrid, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.n()],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Periodic access: `at(i) == at(i + n)` for every `i`.
    #[inline]
    pub fn at(&self, i: isize) -> f64 {
        self.values[self.grid.wrap(i)]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.values)
    }
}

/// Samples `f` at every grid point; a non-finite sample names its index.
pub fn sample_field(grid: &UniformGrid, f: impl Fn(f64) -> f64) -> Result<StateField> {
    let values = grid.points().map(f).collect();
    StateField::new(*grid, values)
}

pub(crate) fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}
