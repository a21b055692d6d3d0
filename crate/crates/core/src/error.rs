use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument is outside its admissible domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The energy gap 2*omega0 vanishes or the radicand turns negative
    /// (exceptional/degenerate point).
    #[error("degenerate energy gap: omega0 radicand {radicand:.6e} is not positive")]
    DegenerateGap { radicand: f64 },

    /// An evaluation argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive refinement exhausted its subdivision budget.
    #[error(
        "quadrature failure: error estimate {achieved:.3e} above tolerance {requested:.3e} \
         after {subdivisions} subdivisions"
    )]
    QuadratureFailure {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    /// A Fisher curve is identically zero on the scan grid.
    #[error("curve evaluates to zero everywhere on the scan grid")]
    EmptyCurve,

    /// Trace of the evolved state underflowed during normalization.
    #[error("normalization collapse: trace {trace:.3e}")]
    NormalizationCollapse { trace: f64 },

    /// Raising the Fock cutoff by 4 still moves the result too much.
    #[error("Fock truncation not converged: cutoff +4 shifts the result by {delta:.3e}")]
    TruncationError { delta: f64 },

    /// The Dyson map is too ill-conditioned on the truncated space.
    #[error("Dyson map ill-conditioned: condition number {cond:.3e}")]
    ConditioningFailure { cond: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}
