//! Fixed-coefficient half-point fluxes for the auxiliary variables.

/// `flux_{i+1/2} = Σ_j coeffs[j] * w[i + first + j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxStencil {
    pub first: isize,
    pub coeffs: &'static [f64],
}

impl FluxStencil {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies the stencil to a window holding `w[i + first ..]`.
    #[inline]
    pub fn apply(&self, window: &[f64]) -> f64 {
        debug_assert_eq!(window.len(), self.coeffs.len());
        self.coeffs.iter().zip(window).map(|(c, v)| c * v).sum()
    }

    /// Offsets and weights of `flux_{i+1/2} - flux_{i-1/2}` in terms of `w[i + m]`.
    pub fn difference(&self) -> Vec<(isize, f64)> {
        let n = self.coeffs.len();
        (0..=n)
            .map(|j| {
                // w[i+m] enters flux_{i+1/2} with coeffs[m - first] and
                // flux_{i-1/2} with coeffs[m - first + 1]
                let here = if j > 0 { self.coeffs[j - 1] } else { 0.0 };
                let next = if j < n { self.coeffs[j] } else { 0.0 };
                (self.first + j as isize - 1, here - next)
            })
            .collect()
    }
}

/// Sixth-order flux for `q_xx` on `q_{i-2..=i+3}`.
pub const Q6: FluxStencil = FluxStencil {
    first: -2,
    coeffs: &[
        -2.0 / 180.0,
        25.0 / 180.0,
        -245.0 / 180.0,
        245.0 / 180.0,
        -25.0 / 180.0,
        2.0 / 180.0,
    ],
};

/// Eighth-order flux for `q_xx` on `q_{i-3..=i+4}`.
pub const Q8: FluxStencil = FluxStencil {
    first: -3,
    coeffs: &[
        9.0 / 5040.0,
        -119.0 / 5040.0,
        889.0 / 5040.0,
        -7175.0 / 5040.0,
        7175.0 / 5040.0,
        -889.0 / 5040.0,
        119.0 / 5040.0,
        -9.0 / 5040.0,
    ],
};

/// Left-biased fifth-order point value `v⁻_{i+1/2}` from `v_{i-2..=i+2}`.
pub const V5_MINUS: FluxStencil = FluxStencil {
    first: -2,
    coeffs: &[2.0 / 60.0, -13.0 / 60.0, 47.0 / 60.0, 27.0 / 60.0, -3.0 / 60.0],
};

/// Right-biased fifth-order point value `q⁺_{i+1/2}` from `q_{i-1..=i+3}`.
pub const Q5_PLUS: FluxStencil = FluxStencil {
    first: -1,
    coeffs: &[-3.0 / 60.0, 27.0 / 60.0, 47.0 / 60.0, -13.0 / 60.0, 2.0 / 60.0],
};

/// Left-biased seventh-order point value `v⁻_{i+1/2}` from `v_{i-3..=i+3}`.
pub const V7_MINUS: FluxStencil = FluxStencil {
    first: -3,
    coeffs: &[
        -3.0 / 420.0,
        25.0 / 420.0,
        -101.0 / 420.0,
        319.0 / 420.0,
        214.0 / 420.0,
        -38.0 / 420.0,
        4.0 / 420.0,
    ],
};

/// Right-biased seventh-order point value `q⁺_{i+1/2}` from `q_{i-2..=i+4}`.
pub const Q7_PLUS: FluxStencil = FluxStencil {
    first: -2,
    coeffs: &[
        4.0 / 420.0,
        -38.0 / 420.0,
        214.0 / 420.0,
        319.0 / 420.0,
        -101.0 / 420.0,
        25.0 / 420.0,
        -3.0 / 420.0,
    ],
};

pub fn linear_flux_q6(w: &[f64; 6]) -> f64 {
    Q6.apply(w)
}

pub fn linear_flux_q8(w: &[f64; 8]) -> f64 {
    Q8.apply(w)
}

pub fn linear_flux_v5_minus(w: &[f64; 5]) -> f64 {
    V5_MINUS.apply(w)
}

pub fn linear_flux_q5_plus(w: &[f64; 5]) -> f64 {
    Q5_PLUS.apply(w)
}

pub fn linear_flux_v7_minus(w: &[f64; 7]) -> f64 {
    V7_MINUS.apply(w)
}

pub fn linear_flux_q7_plus(w: &[f64; 7]) -> f64 {
    Q7_PLUS.apply(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn window(st: &FluxStencil, f: impl Fn(f64) -> f64, x: f64, dx: f64) -> Vec<f64> {
        (0..st.len())
            .map(|j| f(x + (st.first + j as isize) as f64 * dx))
            .collect()
    }

    #[test]
    fn difference_fluxes_annihilate_constants() {
        for st in [Q6, Q8] {
            assert!(st.coeffs.iter().sum::<f64>().abs() < 1e-15);
        }
        assert!(linear_flux_q6(&[2.5; 6]).abs() < 1e-15);
        assert!(linear_flux_q8(&[2.5; 8]).abs() < 1e-15);
    }

    #[test]
    fn point_fluxes_reproduce_constants() {
        for st in [V5_MINUS, Q5_PLUS, V7_MINUS, Q7_PLUS] {
            assert!((st.coeffs.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert!((linear_flux_v5_minus(&[1.5; 5]) - 1.5).abs() < 1e-15);
        assert!((linear_flux_q7_plus(&[1.5; 7]) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn linear_data() {
        let dx = 0.01;
        let x = |j: isize| 0.3 + j as f64 * dx;
        // q-fluxes: Σ a_j j = 1, so a linear field returns dx
        let w6: [f64; 6] = std::array::from_fn(|j| x(j as isize - 2));
        assert!((linear_flux_q6(&w6) - dx).abs() < 1e-15);
        let w8: [f64; 8] = std::array::from_fn(|j| x(j as isize - 3));
        assert!((linear_flux_q8(&w8) - dx).abs() < 1e-15);
        // point fluxes land on the half point
        let half = 0.3 + 0.5 * dx;
        let v5: [f64; 5] = std::array::from_fn(|j| x(j as isize - 2));
        assert!((linear_flux_v5_minus(&v5) - half).abs() < 1e-15);
        let q5: [f64; 5] = std::array::from_fn(|j| x(j as isize - 1));
        assert!((linear_flux_q5_plus(&q5) - half).abs() < 1e-15);
        let v7: [f64; 7] = std::array::from_fn(|j| x(j as isize - 3));
        assert!((linear_flux_v7_minus(&v7) - half).abs() < 1e-15);
        let q7: [f64; 7] = std::array::from_fn(|j| x(j as isize - 2));
        assert!((linear_flux_q7_plus(&q7) - half).abs() < 1e-15);
    }

    fn second_derivative_error(st: &FluxStencil, dx: f64) -> f64 {
        let f = |x: f64| (2.0 * PI * x).sin();
        let x0 = 0.2;
        let right = st.apply(&window(st, f, x0, dx));
        let left = st.apply(&window(st, f, x0 - dx, dx));
        ((right - left) / (dx * dx) + 4.0 * PI * PI * f(x0)).abs()
    }

    #[test]
    fn second_derivative_orders() {
        let (h1, h2) = (1.0 / 20.0, 1.0 / 40.0);
        let o6 = (second_derivative_error(&Q6, h1) / second_derivative_error(&Q6, h2)).log2();
        assert!(o6 > 5.5, "q6 order {o6}");
        let o8 = (second_derivative_error(&Q8, h1) / second_derivative_error(&Q8, h2)).log2();
        assert!(o8 >= 7.5, "q8 order {o8}");
    }

    #[test]
    fn first_derivative_orders() {
        let f = |x: f64| (2.0 * PI * x).sin();
        let df = |x: f64| 2.0 * PI * (2.0 * PI * x).cos();
        let x0 = 0.37;
        let err = |st: &FluxStencil, dx: f64| {
            let right = st.apply(&window(st, f, x0, dx));
            let left = st.apply(&window(st, f, x0 - dx, dx));
            ((right - left) / dx - df(x0)).abs()
        };
        for (st, order) in [(V5_MINUS, 5.0), (Q5_PLUS, 5.0), (V7_MINUS, 7.0), (Q7_PLUS, 7.0)] {
            let o = (err(&st, 1.0 / 20.0) / err(&st, 1.0 / 40.0)).log2();
            assert!(o > order - 0.5, "{st:?}: {o}");
        }
    }

    #[test]
    fn half_point_value_is_only_second_order() {
        // The fluxes are point values of the function whose cell averages are
        // the data, so they sit O(dx^2) away from the data's own half-point value.
        let f = |x: f64| (2.0 * PI * x).sin();
        let x0 = 0.37;
        let err = |dx: f64| (V5_MINUS.apply(&window(&V5_MINUS, f, x0, dx)) - f(x0 + 0.5 * dx)).abs();
        let o = (err(1.0 / 40.0) / err(1.0 / 80.0)).log2();
        assert!((o - 2.0).abs() < 0.2, "{o}");
    }

    #[test]
    fn difference_stencil() {
        let d = Q6.difference();
        let expected = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
        assert_eq!(d.first().unwrap().0, -3);
        for ((_, c), e) in d.iter().zip(expected) {
            assert!((c * 180.0 - e).abs() < 1e-12);
        }
    }
}
