use core::fmt;

/// Errors surfaced by the numerical layer.
///
/// Variants map onto the distinct failure classes the CLI reports with
/// separate exit codes: parameter/validation problems, structural residual
/// violations of reference paths, solver failures and statistical failures
/// of Monte Carlo estimates.
#[derive(Debug, Clone, PartialEq)]
pub enum OmError {
    /// Grid construction violated an invariant (N >= 8, T in (0, 4], ...).
    InvalidGrid(&'static str),
    /// Hurst index outside the admissible windows (1/4, 1/2) u (1/2, 1).
    InvalidHurst { h: f64, reason: &'static str },
    /// A scalar parameter failed validation; `name` identifies it.
    InvalidParam { name: &'static str, reason: &'static str },
    /// Component index out of range for a path sample.
    ComponentOutOfRange { index: usize, len: usize },
    /// A supplied partial derivative disagrees with finite differences.
    DriftPartialMismatch { name: &'static str, max_rel_err: f64 },
    /// Non-finite value encountered where a finite one is required.
    NonFinite(&'static str),
    /// Cholesky factorisation failed; signals a bad (grid, H) configuration.
    CholeskyFailed { pivot: usize },
    /// Reference-path structural constraint violated beyond tolerance.
    StructuralResidual { residual: f64, tol: f64 },
    /// Fixed-point construction of the drift component did not converge.
    FixedPointDiverged { iters: usize },
    /// Minimiser could not make progress (line search exhausted, blow-up).
    SolverFailure(&'static str),
    /// Too few Monte Carlo hits to form the requested estimate.
    InsufficientHits { epsilon: f64, hits: usize, needed: usize },
}

impl fmt::Display for OmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmError::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            OmError::InvalidHurst { h, reason } => {
                write!(f, "invalid Hurst index {h}: {reason}")
            }
            OmError::InvalidParam { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            OmError::ComponentOutOfRange { index, len } => {
                write!(f, "component {index} out of range (path has {len})")
            }
            OmError::DriftPartialMismatch { name, max_rel_err } => write!(
                f,
                "partial `{name}` disagrees with finite differences (max rel err {max_rel_err:.3e})"
            ),
            OmError::NonFinite(what) => write!(f, "non-finite value in {what}"),
            OmError::CholeskyFailed { pivot } => {
                write!(f, "covariance Cholesky failed at pivot {pivot}")
            }
            OmError::StructuralResidual { residual, tol } => write!(
                f,
                "reference-path structural residual {residual:.3e} exceeds tolerance {tol:.3e}"
            ),
            OmError::FixedPointDiverged { iters } => {
                write!(f, "drift-component fixed point did not converge in {iters} iterations")
            }
            OmError::SolverFailure(msg) => write!(f, "solver failure: {msg}"),
            OmError::InsufficientHits { epsilon, hits, needed } => write!(
                f,
                "insufficient hits at epsilon {epsilon:.3e}: {hits} < {needed}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OmError {}
