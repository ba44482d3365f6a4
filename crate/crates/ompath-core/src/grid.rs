//! Uniform time grids, sampled paths and the discrete path norms.

use alloc::vec::Vec;

use crate::error::OmError;
use crate::math;

/// Largest horizon the constructors accept; solutions of the example
/// systems are only guaranteed to exist on a bounded window.
pub const MAX_HORIZON: f64 = 4.0;

/// Coarsest admissible grid; the fractional operators are meaningless below.
pub const MIN_STEPS: usize = 8;

/// Uniform partition of `[0, T]` into `N` steps (`N + 1` nodes).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    t_end: f64,
    n_steps: usize,
    step: f64,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(t_end: f64, n_steps: usize) -> Result<Self, OmError> {
        if !(t_end > 0.0) || t_end > MAX_HORIZON || !t_end.is_finite() {
            return Err(OmError::InvalidGrid("horizon T must lie in (0, 4]"));
        }
        if n_steps < MIN_STEPS {
            return Err(OmError::InvalidGrid("need at least 8 steps"));
        }
        let step = t_end / n_steps as f64;
        let nodes = (0..=n_steps)
            .map(|i| t_end * (i as f64 / n_steps as f64))
            .collect();
        Ok(Self { t_end, n_steps, step, nodes })
    }

    /// Horizon `T`.
    #[inline]
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Number of steps `N`; the grid has `N + 1` nodes.
    #[inline]
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Step size `h = T / N`.
    #[inline]
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Node `t_i = i h`.
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Trapezoid quadrature of samples over the whole grid.
    pub fn trapezoid(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n_steps + 1);
        let mut acc = 0.5 * (f[0] + f[self.n_steps]);
        for v in &f[1..self.n_steps] {
            acc += v;
        }
        acc * self.step
    }

    /// Running trapezoid integral; entry `i` approximates the integral up
    /// to node `i` (entry 0 is zero).
    pub fn cumulative_trapezoid(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n_steps + 1);
        let mut out = Vec::with_capacity(f.len());
        let mut acc = 0.0;
        out.push(0.0);
        for i in 1..f.len() {
            acc += 0.5 * self.step * (f[i - 1] + f[i]);
            out.push(acc);
        }
        out
    }

    /// Second-order discrete time derivative: centered in the interior,
    /// one-sided three-point stencils at both ends.
    pub fn derivative(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n_steps + 1);
        let n = self.n_steps;
        let h = self.step;
        let mut out = Vec::with_capacity(n + 1);
        out.push((-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h));
        for i in 1..n {
            out.push((f[i + 1] - f[i - 1]) / (2.0 * h));
        }
        out.push((3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h));
        out
    }

    /// Second discrete derivative (three-point stencils; copies the nearest
    /// interior value at the ends, where no centered stencil exists).
    pub fn second_derivative(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n_steps + 1);
        let n = self.n_steps;
        let h2 = self.step * self.step;
        let mut out = Vec::with_capacity(n + 1);
        out.push((f[2] - 2.0 * f[1] + f[0]) / h2);
        for i in 1..n {
            out.push((f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2);
        }
        out.push((f[n] - 2.0 * f[n - 1] + f[n - 2]) / h2);
        out
    }
}

/// One or two scalar components sampled on a grid.
///
/// One component for non-degenerate problems, two for the degenerate
/// system `Z = (X, Y)`.
#[derive(Debug, Clone)]
pub struct PathSample {
    grid: Grid,
    components: Vec<Vec<f64>>,
}

impl PathSample {
    pub fn new(grid: Grid, components: Vec<Vec<f64>>) -> Result<Self, OmError> {
        if components.is_empty() || components.len() > 2 {
            return Err(OmError::InvalidParam {
                name: "components",
                reason: "a path has 1 or 2 components",
            });
        }
        for c in &components {
            if c.len() != grid.n_steps() + 1 {
                return Err(OmError::InvalidParam {
                    name: "components",
                    reason: "component length must be N + 1",
                });
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(OmError::NonFinite("path component"));
            }
        }
        Ok(Self { grid, components })
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, index: usize) -> Result<&[f64], OmError> {
        self.components
            .get(index)
            .map(|v| v.as_slice())
            .ok_or(OmError::ComponentOutOfRange { index, len: self.components.len() })
    }
}

/// Discrete sup norm of one component: max over nodes of |value|.
pub fn sup_norm(p: &PathSample, component: usize) -> Result<f64, OmError> {
    Ok(sup_norm_slice(p.component(component)?))
}

pub fn sup_norm_slice(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, &v| math::fmax(m, math::abs(v)))
}

/// Discrete Hölder norm: sup norm plus the seminorm
/// `max_{i<j} |p_j - p_i| / (t_j - t_i)^beta`.
///
/// All node pairs are scanned, O(N^2); fine at desk scale (N <= 4096).
pub fn holder_norm(p: &PathSample, component: usize, beta: f64) -> Result<f64, OmError> {
    let values = p.component(component)?;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(OmError::InvalidParam {
            name: "beta",
            reason: "Hölder exponent must lie in (0, 1)",
        });
    }
    Ok(sup_norm_slice(values) + holder_seminorm_slice(p.grid(), values, beta))
}

pub fn holder_seminorm_slice(grid: &Grid, values: &[f64], beta: f64) -> f64 {
    let n = values.len();
    let mut semi: f64 = 0.0;
    // Uniform spacing: (t_j - t_i)^beta depends only on j - i.
    let mut gap_pow = Vec::with_capacity(n);
    gap_pow.push(0.0);
    for k in 1..n {
        gap_pow.push(math::pow(k as f64 * grid.step(), beta));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let r = math::abs(values[j] - values[i]) / gap_pow[j - i];
            semi = math::fmax(semi, r);
        }
    }
    semi
}

/// Hölder norm descriptor; carries the exponent and regime-validation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderNorm {
    pub beta: f64,
}

impl HolderNorm {
    pub fn new(beta: f64) -> Result<Self, OmError> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(OmError::InvalidParam {
                name: "beta",
                reason: "Hölder exponent must lie in (0, 1)",
            });
        }
        Ok(Self { beta })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn path(grid: &Grid, values: Vec<f64>) -> PathSample {
        PathSample::new(grid.clone(), vec![values]).unwrap()
    }

    #[test]
    fn grid_invariants() {
        let g = Grid::new(1.0, 16).unwrap();
        assert_eq!(g.nodes().len(), 17);
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(16), 1.0);
        for i in 1..=16 {
            assert!(g.node(i) > g.node(i - 1));
            assert!((g.node(i) - g.node(i - 1) - g.step()).abs() < 1e-15);
        }
        assert!(Grid::new(1.0, 7).is_err());
        assert!(Grid::new(0.0, 16).is_err());
        assert!(Grid::new(4.5, 16).is_err());
    }

    #[test]
    fn sup_norm_constant_and_finite_max() {
        let g = Grid::new(1.0, 8).unwrap();
        let p = path(&g, vec![3.0; 9]);
        assert_eq!(sup_norm(&p, 0).unwrap(), 3.0);

        let mut vals = vec![0.0; 9];
        vals[1] = 1.0;
        vals[2] = -2.0;
        let p = path(&g, vals);
        assert_eq!(sup_norm(&p, 0).unwrap(), 2.0);
        assert!(sup_norm(&p, 1).is_err());
    }

    #[test]
    fn sup_norm_matches_brute_force_scan() {
        // Deterministic pseudo-random path vs a direct scan.
        let g = Grid::new(1.0, 64).unwrap();
        let vals: Vec<f64> = (0..=64)
            .map(|i| {
                let x = i as f64;
                (x * 12.9898).sin() * 43758.5453 % 1.0
            })
            .collect();
        let brute = vals.iter().map(|v| v.abs()).fold(0.0_f64, f64::max);
        let p = path(&g, vals);
        assert_eq!(sup_norm(&p, 0).unwrap(), brute);
    }

    #[test]
    fn holder_norm_constant_path() {
        let g = Grid::new(1.0, 16).unwrap();
        let p = path(&g, vec![1.5; 17]);
        // Seminorm of a constant is 0; norm collapses to the sup.
        assert_eq!(holder_norm(&p, 0, 0.5).unwrap(), 1.5);
    }

    #[test]
    fn holder_seminorm_linear_path_brute_force() {
        // p(t) = t on [0,1], beta = 1/2: seminorm = max (t_j - t_i)^{1/2} = 1.
        let g = Grid::new(1.0, 32).unwrap();
        let vals: Vec<f64> = g.nodes().to_vec();
        let mut brute: f64 = 0.0;
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                brute = brute
                    .max((vals[j] - vals[i]).abs() / (g.node(j) - g.node(i)).sqrt());
            }
        }
        let semi = holder_seminorm_slice(&g, &vals, 0.5);
        assert!((semi - brute).abs() < 1e-12);
        assert!((semi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn holder_dominates_sup() {
        let g = Grid::new(1.0, 16).unwrap();
        let vals: Vec<f64> = (0..=16).map(|i| ((i * i) as f64 * 0.37).sin()).collect();
        let p = path(&g, vals);
        assert!(holder_norm(&p, 0, 0.3).unwrap() >= sup_norm(&p, 0).unwrap());
        assert!(holder_norm(&p, 0, 1.0).is_err());
    }

    #[test]
    fn derivative_exact_on_quadratics() {
        let g = Grid::new(2.0, 16).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|&t| 1.0 + 2.0 * t + 3.0 * t * t).collect();
        let d = g.derivative(&f);
        for (i, &t) in g.nodes().iter().enumerate() {
            assert!(
                (d[i] - (2.0 + 6.0 * t)).abs() < 1e-10,
                "node {i}: {} vs {}",
                d[i],
                2.0 + 6.0 * t
            );
        }
        let d2 = g.second_derivative(&f);
        for v in d2 {
            assert!((v - 6.0).abs() < 1e-9);
        }
    }
}
