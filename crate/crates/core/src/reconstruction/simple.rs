//! Fifth-order simple WENO: one five-cell polynomial and two linear ones.

use super::poly::{smoothness_indicator, CellAverageFit, LocalPolynomial};
use super::Side;
use crate::config::WenoConfig;
use crate::error::Result;

/// Simple WENO reconstruction on the window `w[i-2..=i+2]`.
///
/// The big-stencil quartic `p1` is split as `p1 = γ1 p̃1 + γ2 p2 + γ3 p3`,
/// and the WENO polynomial is `ω1 p̃1 + ω2 p2 + ω3 p3`.
#[derive(Debug, Clone)]
pub struct SimpleWeno {
    gamma: [f64; 3],
    epsilon: f64,
    big: CellAverageFit,
    left: CellAverageFit,
    right: CellAverageFit,
    inject_linear: bool,
}

impl SimpleWeno {
    pub fn new(gamma: [f64; 3], epsilon: f64) -> Self {
        Self {
            gamma,
            epsilon,
            big: CellAverageFit::central(2).expect("5x5 moment system"),
            left: CellAverageFit::new(-1, 2).expect("2x2 moment system"),
            right: CellAverageFit::new(0, 2).expect("2x2 moment system"),
            inject_linear: false,
        }
    }

    pub fn from_config(cfg: &WenoConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self::new(cfg.simple_linear_weights, cfg.epsilon))
    }

    /// Test hook: use `ω_r = γ_r` so the result collapses to the quartic `p1`.
    #[doc(hidden)]
    pub fn inject_linear_weights(mut self) -> Self {
        self.inject_linear = true;
        self
    }

    /// Candidate polynomials `(p̃1, p2, p3)` and the plain quartic `p1`.
    pub fn candidates(&self, w: &[f64]) -> ([LocalPolynomial; 3], LocalPolynomial) {
        debug_assert_eq!(w.len(), 5);
        let p1 = self.big.fit(w);
        let p2 = self.left.fit(&w[1..3]);
        let p3 = self.right.fit(&w[2..4]);
        let [g1, g2, g3] = self.gamma;
        let mut p1_tilde = p1.scaled(1.0 / g1);
        p1_tilde.axpy(-g2 / g1, &p2);
        p1_tilde.axpy(-g3 / g1, &p3);
        ([p1_tilde, p2, p3], p1)
    }

    /// Smoothness indicators; `β1` is measured on `p̃1`.
    pub fn smoothness(&self, candidates: &[LocalPolynomial; 3]) -> [f64; 3] {
        candidates.each_ref().map(smoothness_indicator)
    }

    pub fn nonlinear_weights(&self, beta: &[f64; 3]) -> [f64; 3] {
        if self.inject_linear {
            return self.gamma;
        }
        let tau = (0.5 * ((beta[0] - beta[1]).abs() + (beta[0] - beta[2]).abs())).powi(2);
        let raw: [f64; 3] =
            std::array::from_fn(|r| self.gamma[r] * (1.0 + tau / (beta[r] + self.epsilon)));
        let total: f64 = raw.iter().sum();
        raw.map(|w| w / total)
    }

    /// Full WENO polynomial on the target cell together with its weights.
    pub fn reconstruct(&self, w: &[f64]) -> (LocalPolynomial, [f64; 3]) {
        let (cands, _) = self.candidates(w);
        let beta = self.smoothness(&cands);
        let omega = self.nonlinear_weights(&beta);
        let mut p = cands[0].scaled(omega[0]);
        p.axpy(omega[1], &cands[1]);
        p.axpy(omega[2], &cands[2]);
        (p, omega)
    }

    #[inline]
    pub fn point(&self, w: &[f64], side: Side) -> f64 {
        self.reconstruct(w).0.eval(side.offset())
    }
}

/// One-shot simple WENO value at `x_{i±1/2}` from `w[i-2..=i+2]`.
pub fn simple_weno_point(w: &[f64; 5], side: Side, cfg: &WenoConfig) -> Result<f64> {
    Ok(SimpleWeno::from_config(cfg)?.point(w, side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scheme;
    use proptest::prelude::*;

    fn cfg() -> WenoConfig {
        WenoConfig::new(Scheme::Weno5Simple)
    }

    #[test]
    fn constant_data() {
        for g in [[0.98, 0.01, 0.01], [0.4, 0.3, 0.3], [0.2, 0.5, 0.3]] {
            let s = SimpleWeno::new(g, 1e-10);
            for side in [Side::RightHalf, Side::LeftHalf] {
                assert!((s.point(&[1.7; 5], side) - 1.7).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn equal_indicators_give_linear_weights() {
        // every candidate is the same line, so τ = 0
        let s = SimpleWeno::new([0.98, 0.01, 0.01], 1e-10);
        let w = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let (cands, _) = s.candidates(&w);
        let beta = s.smoothness(&cands);
        assert!((beta[0] - beta[1]).abs() < 1e-13 && (beta[0] - beta[2]).abs() < 1e-13);
        let omega = s.nonlinear_weights(&beta);
        for (o, g) in omega.iter().zip([0.98, 0.01, 0.01]) {
            assert!((o - g).abs() < 1e-14);
        }
        assert!((s.point(&w, Side::RightHalf) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn injected_weights_reproduce_quartic() {
        // data are cell averages of a quartic, so p1 is that quartic
        let quartic = LocalPolynomial::new(&[0.3, -1.1, 0.4, 0.25, -0.05]);
        let w: [f64; 5] = std::array::from_fn(|j| quartic.cell_average(j as isize - 2));
        let s = SimpleWeno::new([0.5, 0.2, 0.3], 1e-10).inject_linear_weights();
        for side in [Side::RightHalf, Side::LeftHalf] {
            let exact = quartic.eval(side.offset());
            assert!((s.point(&w, side) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn step_stays_bounded() {
        // the leak through the flat candidate is proportional to ε
        let c = cfg();
        let s = SimpleWeno::from_config(&c).unwrap();
        let slack = 1e-12 + 10.0 * c.epsilon;
        for w in [[0.0, 0.0, 0.0, 1.0, 1.0], [1.0, 1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0, 1.0]] {
            for side in [Side::RightHalf, Side::LeftHalf] {
                let v = s.point(&w, side);
                assert!((-slack..=1.0 + slack).contains(&v), "{w:?} {side:?}: {v}");
            }
        }
    }

    proptest! {
        #[test]
        fn weights_are_convex(w in prop::array::uniform5(-10.0f64..10.0)) {
            let s = SimpleWeno::from_config(&cfg()).unwrap();
            let (_, omega) = s.reconstruct(&w);
            prop_assert!(omega.iter().all(|&o| o >= 0.0));
            prop_assert!((omega.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }

        #[test]
        fn mirror_symmetry(w in prop::array::uniform5(-10.0f64..10.0)) {
            let s = SimpleWeno::from_config(&cfg()).unwrap();
            let mut m = w;
            m.reverse();
            let a = s.point(&w, Side::RightHalf);
            let b = s.point(&m, Side::LeftHalf);
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
