//! DP equation: smooth soliton, peakons and the initial data of the
//! interaction experiments.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// `sign` with `sign(0) = 0`.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Smooth soliton `u = U(x − ct)` with `U → a` at infinity.
///
/// The closed form describes the wave with `c = 5a`; other speeds are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    pub a: f64,
    pub c: f64,
}

impl SolitonParams {
    pub fn new(a: f64) -> Self {
        Self { a, c: 5.0 * a }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || (self.c - 5.0 * self.a).abs() > 1e-12 * self.c.abs() {
            return Err(Error::InvalidConfig(format!(
                "soliton needs a > 0 and c = 5a (a = {}, c = {})",
                self.a, self.c
            )));
        }
        Ok(())
    }
}

impl Default for SolitonParams {
    fn default() -> Self {
        Self::new(1.0)
    }
}

/// Below this `|ξ|` the removable singularity at the crest is replaced by its limit.
const CREST_CUTOFF: f64 = 1e-8;

/// `U(ξ)` for `a = 1`.
fn soliton_unit(xi: f64) -> f64 {
    let s5 = 5f64.sqrt();
    let crest = 4.0 - s5;
    let e = (-xi.abs()).exp();
    if xi.abs() < CREST_CUTOFF {
        return crest;
    }
    if e == 0.0 {
        return 1.0;
    }
    let b = (1.0 + e) / (1.0 - e);
    let p = -(7.0 + 3.0 * s5) / 3.0 * b + (38.0 + 17.0 * s5) / 27.0 * b * b * b;
    // The discriminant (2+√5)/27 + a₂b² − a₄b⁴ vanishes at b = 1; with
    // γ = b² − 1 = 4e/(1−e)² it is −γ((2a₄ − a₂) + a₄γ), free of cancellation.
    // Near b = 1 the root's angle is close to π/3, so an absolute error in
    // √(−disc) would pass straight into U.
    let a4 = (521.0 + 233.0 * s5) / 54.0;
    let gamma = 4.0 * e / ((1.0 - e) * (1.0 - e));
    let neg_disc = gamma * ((525.0 + 235.0 * s5) / 54.0 + a4 * gamma);
    // disc ≤ 0, so the two cube roots are complex conjugates; the principal
    // branch is the continuous one, including at disc = 0 where p < 0 and the
    // real cube root would be the wrong root.
    let root = Complex64::new(p, neg_disc.sqrt()).cbrt();
    let x = 2.0 * root.re + (2.0 + s5) / 3.0 * b;
    crest - 2.0 * s5 / (x * x - 1.0)
}

pub fn dp_soliton(x: f64, t: f64, p: &SolitonParams) -> f64 {
    p.a * soliton_unit(x - p.c * t)
}

/// `c e^{−|x−ct|}` for `sign > 0`, `−c e^{−|x+ct|}` otherwise.
pub fn dp_peakon(x: f64, t: f64, c: f64, sign: f64) -> f64 {
    if sign >= 0.0 {
        c * (-(x - c * t).abs()).exp()
    } else {
        -c * (-(x + c * t).abs()).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPeakonParams {
    pub c1: f64,
    pub c2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl Default for TwoPeakonParams {
    fn default() -> Self {
        Self {
            c1: 2.0,
            c2: 1.0,
            x1: -13.792,
            x2: -4.0,
        }
    }
}

/// `±(c₁e^{−|x−x₁|} + c₂e^{−|x−x₂|})`.
pub fn dp_two_peakon_ic(x: f64, p: &TwoPeakonParams, sign: f64) -> f64 {
    let s = if sign >= 0.0 { 1.0 } else { -1.0 };
    s * (p.c1 * (-(x - p.x1).abs()).exp() + p.c2 * (-(x - p.x2).abs()).exp())
}

/// `e^{−|x+5|} − e^{−|x−5|}`.
pub fn dp_peakon_antipeakon_ic(x: f64) -> f64 {
    (-(x + 5.0).abs()).exp() - (-(x - 5.0).abs()).exp()
}

/// `e^{−|x+5|} + sign(x)e^{−|x|} − e^{−|x−5|}`.
pub fn dp_triple_ic(x: f64) -> f64 {
    dp_peakon_antipeakon_ic(x) + sign(x) * (-x.abs()).exp()
}

/// `−sign(x)e^{−|x|}/(t+1)`.
pub fn dp_shock_peakon(x: f64, t: f64) -> f64 {
    -sign(x) * (-x.abs()).exp() / (t + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavebreakVariant {
    /// `e^{0.5x²} sin(πx)` on `[−2, 2]`
    Gaussian,
    /// `sech²(0.1(x + 50))` on `[−100, 100]`
    Sech,
}

pub fn dp_wavebreak_ic(x: f64, variant: WavebreakVariant) -> f64 {
    match variant {
        WavebreakVariant::Gaussian => (0.5 * x * x).exp() * (std::f64::consts::PI * x).sin(),
        WavebreakVariant::Sech => {
            let s = 1.0 / (0.1 * (x + 50.0)).cosh();
            s * s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soliton_limits() {
        let p = SolitonParams::default();
        assert!((dp_soliton(60.0, 0.0, &p) - 1.0).abs() < 1e-12);
        let crest = 4.0 - 5f64.sqrt();
        assert_eq!(dp_soliton(0.0, 0.0, &p), crest);
        for xi in [1e-6, -1e-6] {
            assert!((dp_soliton(xi, 0.0, &p) - crest).abs() < 1e-5);
        }
        for xi in [0.3, 1.7, 4.2, 11.0] {
            assert_eq!(dp_soliton(xi, 0.0, &p), dp_soliton(-xi, 0.0, &p));
        }
    }

    #[test]
    fn soliton_reference_values() {
        // 40-digit evaluation of the closed form
        let p = SolitonParams::default();
        for (xi, v) in [
            (0.5, 1.748_595_527_686_397),
            (1.0, 1.705_300_755_609_686),
            (2.0, 1.564_913_874_646_1),
            (5.0, 1.177_935_017_179_022),
        ] {
            assert!((dp_soliton(xi, 0.0, &p) - v).abs() < 1e-13, "{xi}");
        }
        assert!((dp_soliton(5.0 + 5.0 * 0.7, 0.7, &p) - 1.177_935_017_179_022).abs() < 1e-13);
        // far field, where the discriminant nearly vanishes
        for (xi, excess) in [(30.0, 7.318_887_915_854_826e-7), (35.0, 6.007_711_063_039_874e-8)] {
            assert!((dp_soliton(xi, 0.0, &p) - 1.0 - excess).abs() < 1e-15, "{xi}");
        }
    }

    #[test]
    fn soliton_solves_integrated_wave_equation() {
        // −cU + cU'' + 2U² = UU'' + U'² − c a + 2a² away from the crest
        let p = SolitonParams::default();
        let u = |x: f64| dp_soliton(x, 0.0, &p);
        let h = 1e-3;
        for xi in [0.4, 1.0, 2.5, 6.0] {
            let (um, u0, up) = (u(xi - h), u(xi), u(xi + h));
            let d1 = (up - um) / (2.0 * h);
            let d2 = (up - 2.0 * u0 + um) / (h * h);
            let lhs = -p.c * u0 + p.c * d2 + 2.0 * u0 * u0;
            let rhs = u0 * d2 + d1 * d1 - p.c * p.a + 2.0 * p.a * p.a;
            assert!((lhs - rhs).abs() < 1e-5, "{xi}: {}", lhs - rhs);
        }
        assert!(SolitonParams { a: 1.0, c: 4.0 }.validate().is_err());
    }

    #[test]
    fn peakons() {
        assert_eq!(dp_peakon(3.0, 3.0, 1.0, 1.0), 1.0);
        assert!((dp_peakon(2.0, 1.0, 1.0, 1.0) - (-1f64).exp()).abs() < 1e-16);
        assert_eq!(dp_peakon(-2.0, 1.0, 2.0, -1.0), -2.0);
    }

    #[test]
    fn interaction_data() {
        let p = TwoPeakonParams::default();
        let v = dp_two_peakon_ic(-4.0, &p, 1.0);
        assert!((v - (2.0 * (-9.792f64).exp() + 1.0)).abs() < 1e-15);
        assert_eq!(dp_two_peakon_ic(-4.0, &p, -1.0), -v);
        assert_eq!(dp_peakon_antipeakon_ic(0.0), 0.0);
        let jump = dp_triple_ic(1e-12) - dp_triple_ic(-1e-12);
        assert!((jump - 2.0).abs() < 1e-10);
        assert_eq!(dp_triple_ic(0.0), 0.0);
    }

    #[test]
    fn shock_peakon() {
        assert!((dp_shock_peakon(1e-14, 0.0) + 1.0).abs() < 1e-12);
        assert!((dp_shock_peakon(-1e-14, 0.0) - 1.0).abs() < 1e-12);
        assert!((dp_shock_peakon(-1e-14, 3.0) - 0.25).abs() < 1e-12);
        assert_eq!(dp_shock_peakon(0.0, 1.0), 0.0);
    }

    #[test]
    fn wavebreak_data() {
        assert!(dp_wavebreak_ic(2.0, WavebreakVariant::Gaussian).abs() < 1e-14);
        assert!((dp_wavebreak_ic(0.5, WavebreakVariant::Gaussian) - 0.125f64.exp()).abs() < 1e-15);
        assert_eq!(dp_wavebreak_ic(-50.0, WavebreakVariant::Sech), 1.0);
    }
}
