//! Numerical machinery for Onsager-Machlup (OM) action functionals of scalar
//! and degenerate SDE systems driven by fractional Brownian motion.
//!
//! The crate is organised around the objects the theory needs:
//!
//! - [`grid`]: uniform time grids, sampled paths, sup and Hölder norms;
//! - [`special`]: Gamma/Beta evaluation used by every kernel constant;
//! - [`hurst`]: the Hurst parametrisation `H`, the fractional order
//!   `α = |H - 1/2|` and the constants `c_H`, `d_H`;
//! - [`frac`]: discretised Riemann-Liouville fractional integrals and
//!   derivatives, including the power-weighted composites
//!   `s^w (Op^α [u^p f(u)])(s)`;
//! - [`kernel`]: the fBm Volterra kernel `K^H`, the operator `K^H`, its
//!   regime-dependent inverse, and the exact covariance;
//! - [`sample`]: exact-covariance and kernel-convolution fBm samplers with
//!   counter-based per-path streams;
//! - [`refpath`] and [`action`]: reference-path construction and the OM
//!   action functional with its quadratic/divergence breakdown plus the
//!   numeric trace check of the divergence constant;
//! - [`solver`]: most-probable-path computation by direct minimisation of
//!   the discretised action, with Euler-Lagrange residuals as an
//!   independent stationarity check;
//! - [`mc`]: Monte Carlo tube probabilities, the `γ_ε` ratio with common
//!   random numbers, and small-ball scaling fits.
//!
//! Everything is pure computation over `f64` slices; the crate is
//! `no_std`-compatible (with `alloc`) so the numerics can be reused outside
//! a full std environment. IO, file formats and the CLI live in the
//! companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod action;
pub mod drift;
pub mod error;
pub mod frac;
pub mod grid;
pub mod hurst;
pub mod kernel;
pub(crate) mod math;
pub mod mc;
pub mod quad;
pub mod refpath;
pub mod sample;
pub mod solver;
pub mod special;

pub use error::OmError;
pub use frac::{FracOp, OpKind, Side, WeightedComposite};
pub use grid::{Grid, PathSample};
pub use hurst::{HurstParams, Regime};
pub use kernel::{CovarianceMatrix, KernelMatrix};
