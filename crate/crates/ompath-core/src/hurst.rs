//! Hurst parametrisation and the kernel constants `c_H`, `d_H`.

use crate::error::OmError;
use crate::math;
use crate::special::gamma_pos;

/// Which side of `H = 1/2` the problem sits on.
///
/// The inverse kernel operator is a fractional *integral* of order
/// `α = 1/2 - H` below 1/2 (singular case) and a fractional *derivative*
/// of order `α = H - 1/2` above it (regular case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Singular,
    Regular,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Singular => "singular",
            Regime::Regular => "regular",
        }
    }
}

/// Hurst index plus everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurstParams {
    h: f64,
    alpha: f64,
    regime: Regime,
    c_h: f64,
    d_h: f64,
}

impl HurstParams {
    /// The singular theorems require `1/4 < H < 1/2`; the regular ones
    /// `1/2 < H < 1`. `H = 1/2` (plain Brownian motion) is excluded.
    pub fn new(h: f64) -> Result<Self, OmError> {
        if !h.is_finite() {
            return Err(OmError::InvalidHurst { h, reason: "not finite" });
        }
        let regime = if h > 0.25 && h < 0.5 {
            Regime::Singular
        } else if h > 0.5 && h < 1.0 {
            Regime::Regular
        } else {
            return Err(OmError::InvalidHurst {
                h,
                reason: "need 1/4 < H < 1/2 (singular) or 1/2 < H < 1 (regular)",
            });
        };
        let alpha = math::abs(h - 0.5);
        let g32h = gamma_pos(1.5 - h);
        let gh12 = gamma_pos(h + 0.5);
        let g22h = gamma_pos(2.0 - 2.0 * h);
        let c_h = math::sqrt(2.0 * h * g32h / (gh12 * g22h));
        let d_h = math::sqrt(2.0 * h * g32h * gh12 / g22h);
        Ok(Self { h, alpha, regime, c_h, d_h })
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Fractional order `α = |H - 1/2|`.
    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Kernel constant of the square-integrable Volterra kernel.
    #[inline]
    pub fn c_h(&self) -> f64 {
        self.c_h
    }

    /// Divergence-term constant; satisfies `d_H = c_H Γ(H + 1/2)`.
    #[inline]
    pub fn d_h(&self) -> f64 {
        self.d_h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma_fn;

    #[test]
    fn regime_windows() {
        assert_eq!(HurstParams::new(0.3).unwrap().regime(), Regime::Singular);
        assert_eq!(HurstParams::new(0.7).unwrap().regime(), Regime::Regular);
        assert!(HurstParams::new(0.5).is_err());
        assert!(HurstParams::new(0.2).is_err());
        assert!(HurstParams::new(0.25).is_err());
        assert!(HurstParams::new(1.0).is_err());
    }

    #[test]
    fn d_h_is_c_h_times_gamma() {
        // Deterministic low-discrepancy sweep of 100 H values over both windows.
        for k in 0..100 {
            let u = (k as f64 + 0.5) / 100.0;
            let h = if k % 2 == 0 {
                0.25 + 0.25 * u
            } else {
                0.5 + 0.5 * u
            };
            let Ok(p) = HurstParams::new(h) else { continue };
            let expected = p.c_h() * gamma_fn(h + 0.5).unwrap();
            let rel = ((p.d_h() - expected) / expected).abs();
            assert!(rel < 1e-12, "H={h}: rel err {rel}");
            assert!(p.c_h() > 0.0 && p.d_h() > 0.0);
            assert!(p.c_h().is_finite() && p.d_h().is_finite());
        }
    }

    #[test]
    fn constants_tend_to_one_at_half() {
        for h in [0.5 - 1e-4, 0.5 + 1e-4] {
            let p = HurstParams::new(h).unwrap();
            assert!((p.c_h() - 1.0).abs() < 1e-2, "c_H({h}) = {}", p.c_h());
            assert!((p.d_h() - 1.0).abs() < 1e-2, "d_H({h}) = {}", p.d_h());
        }
    }
}
