//! Fixed-order Gauss-Legendre quadrature.
//!
//! Nodes and weights are computed once per rule by Newton iteration on the
//! Legendre polynomial; operator constructors build a rule and reuse it for
//! every cell, so the setup cost never sits on a hot path.

use alloc::vec::Vec;

use crate::math;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    /// Nodes on [0, 1].
    pub nodes: Vec<f64>,
    /// Weights on [0, 1] (sum to 1).
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        debug_assert!(n >= 2);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            // Initial guess (Abramowitz & Stegun 22.16.6), then Newton.
            let mut x = math::cos(core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if math::abs(dx) < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // Map from [-1, 1] to [0, 1].
            nodes.push(0.5 * (x + 1.0));
            weights.push(0.5 * w);
        }
        Self { nodes, weights }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let len = b - a;
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(a + len * x);
        }
        acc * len
    }

    /// Integrate `g` over the unit interval in the transformed variable.
    pub fn integrate_unit<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(8);
        // Degree 15 is exact for an 8-point rule.
        let val = gl.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((val - 1.0 / 16.0).abs() < 1e-14);
        let val = gl.integrate(-1.0, 2.0, |x| 3.0 * x * x);
        assert!((val - 9.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_length() {
        for n in [4, 16, 32, 64] {
            let gl = GaussLegendre::new(n);
            let s: f64 = gl.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-13, "n={n}: {s}");
        }
    }

    #[test]
    fn smooth_integral_reference() {
        let gl = GaussLegendre::new(32);
        let val = gl.integrate(0.0, core::f64::consts::PI, |x| x.sin());
        assert!((val - 2.0).abs() < 1e-13);
    }
}
