//! Discretised Riemann-Liouville fractional integrals and derivatives on a
//! uniform grid, plus the power-weighted composites
//! `s^w (Op^α [u^p f(u)])(s)` that the inverse kernel operator and the OM
//! functionals are built from.
//!
//! Quadrature scheme: product integration against a piecewise-linear
//! interpolant with exact moments of the singular factor. The derivative
//! uses the Weyl form
//! `D^α g(x) = (1/Γ(1-α)) [ g(x) x^{-α} + α ∫_0^x (g(x)-g(u))(x-u)^{-α-1} du ]`
//! with the hypersingular integral product-integrated on the difference.
//! The weighted first cell `[0, h]` is integrated against `u^p` exactly
//! (closed Beta/Gamma moments at node 1, substitution + Gauss-Legendre for
//! later nodes), so inner powers down to `p > -1` stay second-order.
//!
//! Right-sided operators reuse the left-sided weights through the time
//! reflection `t -> T - t`, which is exact on a uniform grid.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::OmError;
use crate::grid::Grid;
use crate::math;
use crate::quad::GaussLegendre;
use crate::special::{beta_fn, gamma_pos};

/// Which endpoint the fractional operator is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `a+ = 0+`: integrals run from 0 forward.
    LeftPlus,
    /// `T-`: integrals run from the node backwards to `T`.
    RightMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Integral,
    Derivative,
}

/// How the node-0 value of an operator output was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node0 {
    /// Analytic limit (zero for left integrals and the integral composites).
    AnalyticZero,
    /// Quadratic extrapolation from nodes 1..3; the pointwise formula is
    /// singular at 0.
    Extrapolated,
}

const FIRST_CELL_GL: usize = 24;

/// Left-sided composite `s^{outer} (Op^α [u^{inner} f(u)])(s)` with
/// precomputed weights; immutable after construction, application is pure.
#[derive(Debug, Clone)]
pub struct WeightedComposite {
    alpha: f64,
    kind: OpKind,
    inner: f64,
    n: usize,
    h: f64,
    /// Integral: A_k/B_k moment pairs; derivative: P_k/Q_k pairs (k = 1..=N).
    wa: Vec<f64>,
    wb: Vec<f64>,
    /// t_i^{inner} (index 0 unused when inner != 0).
    u_pow: Vec<f64>,
    /// t_i^{outer} (index 0 unused; node 0 is handled by `node0`).
    out_pow: Vec<f64>,
    /// First-cell moment weights for f_0 / f_1, indexed by output node.
    fc0: Vec<f64>,
    fc1: Vec<f64>,
    /// t_i^{-α} for the Weyl boundary term (derivative only).
    t_neg_alpha: Vec<f64>,
    inv_gamma: f64,
    node0: Node0,
}

impl WeightedComposite {
    pub fn new(
        grid: &Grid,
        alpha: f64,
        inner_power: f64,
        outer_power: f64,
        kind: OpKind,
    ) -> Result<Self, OmError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(OmError::InvalidParam {
                name: "alpha",
                reason: "fractional order must lie in (0, 1)",
            });
        }
        if !(inner_power > -1.0) {
            return Err(OmError::InvalidParam {
                name: "inner_power",
                reason: "weighted integrand must be integrable at 0 (need p > -1)",
            });
        }
        let n = grid.n_steps();
        let h = grid.step();
        let p = inner_power;
        let weighted = p != 0.0;

        let mut wa = vec![0.0; n + 1];
        let mut wb = vec![0.0; n + 1];
        match kind {
            OpKind::Integral => {
                // A_k, B_k: exact moments of (t_n - u)^{α-1} against the two
                // linear hat pieces on a cell at distance k.
                let mut pow_a = vec![0.0; n + 1]; // k^α
                let mut pow_b = vec![0.0; n + 1]; // k^{α+1}
                for k in 0..=n {
                    pow_a[k] = math::pow(k as f64, alpha);
                    pow_b[k] = math::pow(k as f64, alpha + 1.0);
                }
                for k in 1..=n {
                    let (a, b) = ((k - 1) as f64, k as f64);
                    let d1 = (pow_b[k] - pow_b[k - 1]) / (alpha + 1.0);
                    let d0 = (pow_a[k] - pow_a[k - 1]) / alpha;
                    wa[k] = d1 - a * d0;
                    wb[k] = b * d0 - d1;
                }
            }
            OpKind::Derivative => {
                // P_k, Q_k: moments of (t_n - u)^{-α-1} and (t_n - u)^{-α}.
                let mut pow_p = vec![0.0; n + 1]; // k^{-α}
                let mut pow_q = vec![0.0; n + 1]; // k^{1-α}
                for k in 1..=n {
                    pow_p[k] = math::pow(k as f64, -alpha);
                    pow_q[k] = math::pow(k as f64, 1.0 - alpha);
                }
                for k in 1..=n {
                    wa[k] = if k == 1 {
                        // P_1 diverges; the coupled last-cell formula replaces it.
                        0.0
                    } else {
                        (pow_p[k - 1] - pow_p[k]) / alpha
                    };
                    wb[k] = (pow_q[k] - pow_q[k - 1]) / (1.0 - alpha);
                }
            }
        }

        let mut u_pow = vec![0.0; n + 1];
        if weighted {
            for i in 1..=n {
                u_pow[i] = math::pow(grid.node(i), p);
            }
        } else {
            for i in 0..=n {
                u_pow[i] = 1.0;
            }
        }

        let mut out_pow = vec![1.0; n + 1];
        if outer_power != 0.0 {
            for i in 1..=n {
                out_pow[i] = math::pow(grid.node(i), outer_power);
            }
        }

        // First-cell moments against u^p, only needed for weighted inputs.
        let (mut fc0, mut fc1) = (vec![0.0; n + 1], vec![0.0; n + 1]);
        if weighted {
            let gl = GaussLegendre::new(FIRST_CELL_GL);
            let hp = math::pow(h, p);
            match kind {
                OpKind::Integral => {
                    // Node 1: both endpoints singular, closed Beta moments,
                    // expressed in units of h^α like the A/B weights.
                    let b1 = beta_fn(p + 1.0, alpha).expect("p > -1, alpha > 0");
                    let b2 = beta_fn(p + 2.0, alpha).expect("p > -1, alpha > 0");
                    fc0[1] = hp * (b1 - b2);
                    fc1[1] = hp * b2;
                    for node in 2..=n {
                        let tn = grid.node(node);
                        let mut m0 = 0.0;
                        let mut m1 = 0.0;
                        // u = h w^{1/(1+p)} absorbs the u^p weight exactly.
                        gl.nodes.iter().zip(&gl.weights).for_each(|(&w, &wt)| {
                            let s = math::pow(w, 1.0 / (1.0 + p));
                            let u = h * s;
                            let ker = math::pow(tn - u, alpha - 1.0);
                            m0 += wt * ker * (1.0 - s);
                            m1 += wt * ker * s;
                        });
                        let scale = hp * h / (1.0 + p) * math::pow(h, -alpha);
                        fc0[node] = scale * m0;
                        fc1[node] = scale * m1;
                    }
                }
                OpKind::Derivative => {
                    // Node 1: coupled hypersingular cell; the J-moments keep
                    // the divergent pieces together.
                    let j_p = j_moment(p, alpha);
                    let j_p1 = j_moment(p + 1.0, alpha);
                    fc0[1] = hp * (j_p - j_p1);
                    fc1[1] = hp * j_p1;
                    for node in 2..=n {
                        let tn = grid.node(node);
                        let mut m0 = 0.0;
                        let mut m1 = 0.0;
                        gl.nodes.iter().zip(&gl.weights).for_each(|(&w, &wt)| {
                            let s = math::pow(w, 1.0 / (1.0 + p));
                            let u = h * s;
                            let ker = math::pow(tn - u, -alpha - 1.0);
                            m0 += wt * ker * (1.0 - s);
                            m1 += wt * ker * s;
                        });
                        let scale = hp * h / (1.0 + p) * math::pow(h, alpha);
                        fc0[node] = scale * m0;
                        fc1[node] = scale * m1;
                    }
                }
            }
        }

        let mut t_neg_alpha = vec![0.0; n + 1];
        if kind == OpKind::Derivative {
            for i in 1..=n {
                t_neg_alpha[i] = math::pow(grid.node(i), -alpha);
            }
        }

        let inv_gamma = match kind {
            OpKind::Integral => 1.0 / gamma_pos(alpha),
            OpKind::Derivative => 1.0 / gamma_pos(1.0 - alpha),
        };
        let node0 = match kind {
            OpKind::Integral => Node0::AnalyticZero,
            OpKind::Derivative => Node0::Extrapolated,
        };

        Ok(Self {
            alpha,
            kind,
            inner: p,
            n,
            h,
            wa,
            wb,
            u_pow,
            out_pow,
            fc0,
            fc1,
            t_neg_alpha,
            inv_gamma,
            node0,
        })
    }

    pub fn node0_policy(&self) -> Node0 {
        self.node0
    }

    /// Apply the composite to samples of `f`; output node 0 follows the
    /// node-0 policy (analytic zero / extrapolation).
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n + 1);
        let weighted = self.inner != 0.0;
        let mut g = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n {
            g.push(self.u_pow[i] * f[i]);
        }
        let h_alpha = math::pow(self.h, self.alpha);
        let mut out = vec![0.0; self.n + 1];
        match self.kind {
            OpKind::Integral => {
                for node in 1..=self.n {
                    let mut acc = 0.0;
                    // Interior cells j = 1..node-1 at distance k = node - j.
                    for j in 1..node {
                        let k = node - j;
                        acc += g[j] * self.wa[k] + g[j + 1] * self.wb[k];
                    }
                    // Cell [0, h].
                    if weighted {
                        acc += self.fc0[node] * f[0] + self.fc1[node] * f[1];
                    } else {
                        acc += g[0] * self.wa[node] + g[1] * self.wb[node];
                    }
                    out[node] = self.inv_gamma * h_alpha * acc * self.out_pow[node];
                }
                out[0] = 0.0;
            }
            OpKind::Derivative => {
                let h_neg_alpha = 1.0 / h_alpha;
                for node in 1..=self.n {
                    let gn = g[node];
                    let mut acc = 0.0;
                    // Interior cells (k = 2..node-1) plus the coupled last cell.
                    for j in 1..node.saturating_sub(1) {
                        let k = node - j;
                        acc += gn * self.wa[k]
                            - g[j] * (self.wb[k] - (k - 1) as f64 * self.wa[k])
                            - g[j + 1] * (k as f64 * self.wa[k] - self.wb[k]);
                    }
                    if node >= 2 {
                        acc += (gn - g[node - 1]) / (1.0 - self.alpha);
                    }
                    // Cell [0, h].
                    if node == 1 {
                        if weighted {
                            acc += self.fc0[1] * f[0] + self.fc1[1] * f[1];
                        } else {
                            acc += (gn - g[0]) / (1.0 - self.alpha);
                        }
                    } else if weighted {
                        acc += gn * self.wa[node]
                            - (self.fc0[node] * f[0] + self.fc1[node] * f[1]);
                    } else {
                        let k = node;
                        acc += gn * self.wa[k]
                            - g[0] * (self.wb[k] - (k - 1) as f64 * self.wa[k])
                            - g[1] * (k as f64 * self.wa[k] - self.wb[k]);
                    }
                    let weyl = gn * self.t_neg_alpha[node] + self.alpha * h_neg_alpha * acc;
                    out[node] = self.inv_gamma * weyl * self.out_pow[node];
                }
                out[0] = extrapolate_node0(&out);
            }
        }
        out
    }
}

/// `J(q, α) = ∫_0^1 v^{-α-1} (1 - (1-v)^q) dv`, the coupled hypersingular
/// moment of the first cell at node 1.
fn j_moment(q: f64, alpha: f64) -> f64 {
    (gamma_pos(1.0 - alpha) * gamma_pos(q + 1.0) / gamma_pos(q + 1.0 - alpha) - 1.0) / alpha
}

/// Quadratic extrapolation to node 0 from nodes 1..3.
pub(crate) fn extrapolate_node0(values: &[f64]) -> f64 {
    3.0 * values[1] - 3.0 * values[2] + values[3]
}

/// Plain fractional operator of either side; wraps the left-sided composite
/// and reflects for `RightMinus`.
#[derive(Debug, Clone)]
pub struct FracOp {
    side: Side,
    inner: WeightedComposite,
}

impl FracOp {
    pub fn new(grid: &Grid, alpha: f64, side: Side, kind: OpKind) -> Result<Self, OmError> {
        Ok(Self {
            side,
            inner: WeightedComposite::new(grid, alpha, 0.0, 0.0, kind)?,
        })
    }

    pub fn kind(&self) -> OpKind {
        self.inner.kind
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        match self.side {
            Side::LeftPlus => self.inner.apply(f),
            Side::RightMinus => {
                let reflected: Vec<f64> = f.iter().rev().copied().collect();
                let mut out = self.inner.apply(&reflected);
                out.reverse();
                out
            }
        }
    }
}

/// One-shot fractional integral `I^α f` of samples on a grid.
pub fn frac_integral(
    grid: &Grid,
    f: &[f64],
    alpha: f64,
    side: Side,
) -> Result<Vec<f64>, OmError> {
    check_samples(grid, f)?;
    Ok(FracOp::new(grid, alpha, side, OpKind::Integral)?.apply(f))
}

/// One-shot fractional derivative `D^α f` (Weyl form) of samples on a grid.
///
/// `f` should be Hölder of order above `α` for the hypersingular integral
/// to converge; this is documented, not enforced.
pub fn frac_derivative(
    grid: &Grid,
    f: &[f64],
    alpha: f64,
    side: Side,
) -> Result<Vec<f64>, OmError> {
    check_samples(grid, f)?;
    Ok(FracOp::new(grid, alpha, side, OpKind::Derivative)?.apply(f))
}

/// One-shot weighted composite `s^{outer} (Op^α [u^{inner} f(u)])(s)`.
///
/// Only the left-sided composites appear in the OM formulas; the right-sided
/// operators are applied to pre-weighted arrays instead.
pub fn weighted_frac_op(
    grid: &Grid,
    f: &[f64],
    alpha: f64,
    inner_power: f64,
    outer_power: f64,
    side: Side,
    kind: OpKind,
) -> Result<Vec<f64>, OmError> {
    check_samples(grid, f)?;
    if side == Side::RightMinus && inner_power != 0.0 {
        return Err(OmError::InvalidParam {
            name: "side",
            reason: "right-sided weighted composites are unused; fold the weight into f",
        });
    }
    let op = WeightedComposite::new(grid, alpha, inner_power, outer_power, kind)?;
    match side {
        Side::LeftPlus => Ok(op.apply(f)),
        Side::RightMinus => {
            let reflected: Vec<f64> = f.iter().rev().copied().collect();
            let mut out = op.apply(&reflected);
            out.reverse();
            Ok(out)
        }
    }
}

/// Returns `(‖I^α f‖_{L^p}, T^α/(α Γ(α)) ‖f‖_{L^p})`; the fractional-integral
/// norm estimate asserts lhs <= rhs.
pub fn frac_norm_bound_check(
    grid: &Grid,
    f: &[f64],
    alpha: f64,
    p: f64,
) -> Result<(f64, f64), OmError> {
    if !(p >= 1.0) {
        return Err(OmError::InvalidParam { name: "p", reason: "need p >= 1" });
    }
    let integral = frac_integral(grid, f, alpha, Side::LeftPlus)?;
    let lhs = lp_norm(grid, &integral, p);
    let rhs = math::pow(grid.t_end(), alpha) / (alpha * gamma_pos(alpha)) * lp_norm(grid, f, p);
    Ok((lhs, rhs))
}

fn lp_norm(grid: &Grid, f: &[f64], p: f64) -> f64 {
    let powered: Vec<f64> = f.iter().map(|&v| math::pow(math::abs(v), p)).collect();
    math::pow(grid.trapezoid(&powered), 1.0 / p)
}

fn check_samples(grid: &Grid, f: &[f64]) -> Result<(), OmError> {
    if f.len() != grid.n_steps() + 1 {
        return Err(OmError::InvalidParam {
            name: "f",
            reason: "sample length must be N + 1",
        });
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(OmError::NonFinite("fractional operator input"));
    }
    Ok(())
}
