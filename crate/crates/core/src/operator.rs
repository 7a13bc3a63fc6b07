//! Periodic (circulant) linear operators with an optional rank-one term.
//!
//! `A = circ(stencil) + σ·11ᵀ`. The solve splits `A` into its truncated banded
//! Toeplitz part `T` (no wrap-around) and a low-rank remainder made of the
//! corner rows plus the rank-one term; `T` is factorized by banded LU and the
//! remainder is handled by the Woodbury identity. Tiny grids fall back to a
//! dense factorization.

use crate::error::{Error, Result};
use crate::linalg::DenseLu;

/// Relative residual accepted by [`PeriodicOperator::solve`].
pub const SOLVE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PeriodicOperator {
    n: usize,
    /// `(offset, coefficient)`: `(A x)_i = Σ c x_{i+offset} + σ Σ_j x_j`.
    stencil: Vec<(isize, f64)>,
    rank_one: f64,
    solver: Option<Solver>,
}

#[derive(Debug, Clone)]
enum Solver {
    Dense(DenseLu),
    Woodbury(Woodbury),
}

impl PeriodicOperator {
    /// Circulant operator; repeated offsets are summed, offsets reduced mod `n`
    /// only when applied.
    pub fn circulant(n: usize, stencil: &[(isize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("empty operator".into()));
        }
        let mut merged: Vec<(isize, f64)> = Vec::new();
        for &(off, c) in stencil {
            if !c.is_finite() {
                return Err(Error::InvalidConfig(format!("non-finite coefficient at offset {off}")));
            }
            match merged.iter_mut().find(|(o, _)| *o == off) {
                Some(entry) => entry.1 += c,
                None => merged.push((off, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        merged.sort_by_key(|&(o, _)| o);
        Ok(Self {
            n,
            stencil: merged,
            rank_one: 0.0,
            solver: None,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::circulant(n, &[(0, 1.0)])
    }

    /// Adds `σ·11ᵀ`.
    pub fn with_rank_one(mut self, sigma: f64) -> Self {
        self.rank_one += sigma;
        self.solver = None;
        self
    }

    /// `a·self + b·other` (unfactorized).
    pub fn combine(a: f64, lhs: &Self, b: f64, rhs: &Self) -> Result<Self> {
        if lhs.n != rhs.n {
            return Err(Error::GridMismatch);
        }
        let stencil: Vec<(isize, f64)> = lhs
            .stencil
            .iter()
            .map(|&(o, c)| (o, a * c))
            .chain(rhs.stencil.iter().map(|&(o, c)| (o, b * c)))
            .collect();
        Ok(Self::circulant(lhs.n, &stencil)?.with_rank_one(a * lhs.rank_one + b * rhs.rank_one))
    }

    /// `a·self` (unfactorized).
    pub fn scaled(&self, a: f64) -> Self {
        let stencil = self.stencil.iter().map(|&(o, c)| (o, a * c)).collect();
        Self {
            n: self.n,
            stencil,
            rank_one: a * self.rank_one,
            solver: None,
        }
    }

    /// Product `self · other` of two pure circulants.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GridMismatch);
        }
        if self.rank_one != 0.0 || other.rank_one != 0.0 {
            return Err(Error::InvalidConfig("compose expects pure circulants".into()));
        }
        let stencil: Vec<(isize, f64)> = self
            .stencil
            .iter()
            .flat_map(|&(a, p)| other.stencil.iter().map(move |&(b, q)| (a + b, p * q)))
            .collect();
        Self::circulant(self.n, &stencil)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stencil(&self) -> &[(isize, f64)] {
        &self.stencil
    }

    pub fn rank_one(&self) -> f64 {
        self.rank_one
    }

    /// Largest `|offset|` in the stencil.
    pub fn half_bandwidth(&self) -> usize {
        self.stencil.iter().map(|&(o, _)| o.unsigned_abs()).max().unwrap_or(0)
    }

    #[inline]
    fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.n as isize) as usize
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "operator size mismatch");
        let shift = if self.rank_one != 0.0 {
            self.rank_one * x.iter().sum::<f64>()
        } else {
            0.0
        };
        (0..self.n as isize)
            .map(|i| {
                self.stencil
                    .iter()
                    .map(|&(o, c)| c * x[self.wrap(i + o)])
                    .sum::<f64>()
                    + shift
            })
            .collect()
    }

    /// Dense row `i` (tests and small systems).
    pub fn row(&self, i: usize) -> Vec<f64> {
        let mut r = vec![self.rank_one; self.n];
        for &(o, c) in &self.stencil {
            r[self.wrap(i as isize + o)] += c;
        }
        r
    }

    pub fn to_dense(&self) -> Vec<f64> {
        (0..self.n).flat_map(|i| self.row(i)).collect()
    }

    pub fn is_factorized(&self) -> bool {
        self.solver.is_some()
    }

    /// Builds the reusable factorization.
    pub fn factorize(mut self) -> Result<Self> {
        let w = self.half_bandwidth();
        let solver = if self.n <= 2 * w + 1 {
            Solver::Dense(DenseLu::new(self.n, self.to_dense())?)
        } else {
            match Woodbury::new(&self, w) {
                Ok(wb) => Solver::Woodbury(wb),
                Err(e) => {
                    log::debug!("banded path failed ({e}); using dense LU");
                    Solver::Dense(DenseLu::new(self.n, self.to_dense())?)
                }
            }
        };
        self.solver = Some(solver);
        Ok(self)
    }

    /// `‖A‖∞`.
    pub fn norm_inf(&self) -> f64 {
        self.stencil.iter().map(|&(_, c)| c.abs()).sum::<f64>() + self.rank_one.abs() * self.n as f64
    }

    /// Solves `A x = b` and checks the normwise backward error
    /// `‖Ax − b‖∞ ≤ 1e-10·(‖A‖∞‖x‖∞ + ‖b‖∞)`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: b.len(),
            });
        }
        let solver = self
            .solver
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("operator used before factorize()".into()))?;
        let x = match solver {
            Solver::Dense(lu) => lu.solve(b),
            Solver::Woodbury(wb) => wb.solve(b),
        };
        let bnorm = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let residual = self
            .apply(&x)
            .iter()
            .zip(b)
            .fold(0.0_f64, |m, (ax, bi)| m.max((ax - bi).abs()));
        let xnorm = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tolerance = SOLVE_TOLERANCE * (self.norm_inf() * xnorm + bnorm);
        if !(residual <= tolerance) && !(bnorm == 0.0 && residual == 0.0) {
            return Err(Error::SolveResidual { residual, tolerance });
        }
        Ok(x)
    }
}

/// Banded LU (no pivoting) of the truncated Toeplitz part.
#[derive(Debug, Clone)]
struct BandedLu {
    n: usize,
    w: usize,
    /// Row-major `n x (2w+1)`; entry `(i, j)` lives at `i*(2w+1) + j - i + w`.
    band: Vec<f64>,
}

impl BandedLu {
    fn new(n: usize, w: usize, stencil: &[(isize, f64)]) -> Result<Self> {
        let width = 2 * w + 1;
        let mut band = vec![0.0; n * width];
        for i in 0..n {
            for &(o, c) in stencil {
                let j = i as isize + o;
                if (0..n as isize).contains(&j) {
                    band[i * width + (o + w as isize) as usize] += c;
                }
            }
        }
        let scale = stencil.iter().map(|&(_, c)| c.abs()).sum::<f64>();
        let at = |i: usize, j: usize| i * width + j + w - i;
        for k in 0..n {
            let pivot = band[at(k, k)];
            if !(pivot.abs() > 1e-12 * scale) {
                return Err(Error::SingularOperator(format!("banded pivot {pivot:e} at row {k}")));
            }
            let last = (k + w).min(n - 1);
            for i in k + 1..=last {
                let l = band[at(i, k)] / pivot;
                band[at(i, k)] = l;
                if l != 0.0 {
                    for j in k + 1..=last {
                        band[at(i, j)] -= l * band[at(k, j)];
                    }
                }
            }
        }
        Ok(Self { n, w, band })
    }

    fn solve_in_place(&self, x: &mut [f64]) {
        let (n, w) = (self.n, self.w);
        let width = 2 * w + 1;
        let at = |i: usize, j: usize| i * width + j + w - i;
        for i in 0..n {
            let mut s = x[i];
            for j in i.saturating_sub(w)..i {
                s -= self.band[at(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=(i + w).min(n - 1) {
                s -= self.band[at(i, j)] * x[j];
            }
            x[i] = s / self.band[at(i, i)];
        }
    }
}

/// `A = T + U Vᵀ` with `T` banded; `A⁻¹ b = y − Z (I + VᵀZ)⁻¹ Vᵀ y`, `y = T⁻¹ b`.
#[derive(Debug, Clone)]
struct Woodbury {
    t: BandedLu,
    /// Columns of `U`: sparse `(row, value)` lists.
    u_cols: Vec<Vec<(usize, f64)>>,
    /// Columns of `V`: sparse `(row, value)` lists.
    v_cols: Vec<Vec<(usize, f64)>>,
    /// `Z = T⁻¹ U`, column-major `m x n`.
    z: Vec<Vec<f64>>,
    capacitance: DenseLu,
}

impl Woodbury {
    fn new(op: &PeriodicOperator, w: usize) -> Result<Self> {
        let n = op.n;
        let t = BandedLu::new(n, w, &op.stencil)?;
        let mut u_cols = Vec::new();
        let mut v_cols = Vec::new();
        // wrapped entries only occur in the first and last w rows
        let rows = (0..w).chain(n - w..n);
        for r in rows {
            let wrapped: Vec<(usize, f64)> = op
                .stencil
                .iter()
                .filter_map(|&(o, c)| {
                    let j = r as isize + o;
                    (!(0..n as isize).contains(&j)).then(|| (op.wrap(j), c))
                })
                .collect();
            if !wrapped.is_empty() {
                u_cols.push(vec![(r, 1.0)]);
                v_cols.push(wrapped);
            }
        }
        if op.rank_one != 0.0 {
            u_cols.push((0..n).map(|i| (i, op.rank_one)).collect());
            v_cols.push((0..n).map(|i| (i, 1.0)).collect());
        }
        let m = u_cols.len();
        let z: Vec<Vec<f64>> = u_cols
            .iter()
            .map(|col| {
                let mut dense = vec![0.0; n];
                for &(i, v) in col {
                    dense[i] = v;
                }
                t.solve_in_place(&mut dense);
                dense
            })
            .collect();
        let mut cap = vec![0.0; m * m];
        for (a, v) in v_cols.iter().enumerate() {
            for (b, zb) in z.iter().enumerate() {
                cap[a * m + b] = v.iter().map(|&(i, val)| val * zb[i]).sum::<f64>();
            }
            cap[a * m + a] += 1.0;
        }
        let capacitance = DenseLu::new(m.max(1), if m == 0 { vec![1.0] } else { cap })?;
        Ok(Self {
            t,
            u_cols,
            v_cols,
            z,
            capacitance,
        })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        self.t.solve_in_place(&mut y);
        if self.u_cols.is_empty() {
            return y;
        }
        let vty: Vec<f64> = self
            .v_cols
            .iter()
            .map(|v| v.iter().map(|&(i, val)| val * y[i]).sum())
            .collect();
        let c = self.capacitance.solve(&vty);
        for (ck, zk) in c.iter().zip(&self.z) {
            for (yi, zi) in y.iter_mut().zip(zk) {
                *yi -= ck * zi;
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_like(n: usize) -> PeriodicOperator {
        // I − D₂ with the sixth-order difference stencil, dx = 1
        let d = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
        let st: Vec<(isize, f64)> = d
            .iter()
            .enumerate()
            .map(|(j, c)| (j as isize - 3, -c / 180.0 + if j == 3 { 1.0 } else { 0.0 }))
            .collect();
        PeriodicOperator::circulant(n, &st).unwrap()
    }

    fn dense_matvec(a: &[f64], x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n).map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum()).collect()
    }

    #[test]
    fn apply_matches_dense_rows() {
        let op = laplacian_like(12).with_rank_one(0.25);
        let x: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).cos()).collect();
        let dense = dense_matvec(&op.to_dense(), &x);
        for (a, b) in op.apply(&x).iter().zip(dense) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn circulant_rows_rotate() {
        let op = laplacian_like(11);
        let r0 = op.row(0);
        for i in 1..11 {
            let ri = op.row(i);
            for j in 0..11 {
                assert_eq!(ri[(j + i) % 11], r0[j]);
            }
        }
    }

    #[test]
    fn round_trip_banded_and_dense_paths() {
        for n in [7, 9, 16, 64, 301] {
            for sigma in [0.0, 1.0 / n as f64] {
                let op = laplacian_like(n).with_rank_one(sigma).factorize().unwrap();
                let x: Vec<f64> = (0..n).map(|i| ((i * i) as f64 * 0.13).sin() + 0.3).collect();
                let b = op.apply(&x);
                let y = op.solve(&b).unwrap();
                for (a, e) in y.iter().zip(&x) {
                    assert!((a - e).abs() < 1e-10, "n = {n}, σ = {sigma}");
                }
            }
        }
    }

    #[test]
    fn compose_matches_sequential_apply() {
        let a = PeriodicOperator::circulant(20, &[(-1, -1.0), (0, 1.0)]).unwrap();
        let b = PeriodicOperator::circulant(20, &[(0, -1.0), (1, 1.0), (3, 0.5)]).unwrap();
        let ab = a.compose(&b).unwrap();
        let x: Vec<f64> = (0..20).map(|i| (i as f64).sqrt()).collect();
        let lhs = ab.apply(&x);
        let rhs = a.apply(&b.apply(&x));
        for (l, r) in lhs.iter().zip(rhs) {
            assert!((l - r).abs() < 1e-13);
        }
    }

    #[test]
    fn singular_operator_is_rejected() {
        // pure difference: annihilates constants
        let op = PeriodicOperator::circulant(32, &[(-1, -1.0), (0, 2.0), (1, -1.0)]).unwrap();
        let res = op.factorize().and_then(|f| f.solve(&[1.0; 32]));
        assert!(res.is_err());
    }

    #[test]
    fn unfactorized_solve_errors() {
        assert!(laplacian_like(16).solve(&[0.0; 16]).is_err());
    }
}
