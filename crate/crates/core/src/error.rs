use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },
    #[error("broken-symmetry phase unavailable: lambda = {lambda} exceeds critical coupling {critical}")]
    PhaseNotAvailable { lambda: f64, critical: f64 },
    #[error("operation not defined for this oscillator class")]
    WrongClass,
    #[error("gap solution failed its self-consistency check (residual {residual:e})")]
    InconsistentGap { residual: f64 },
    #[error("no positive solution of the gap equation")]
    NoPositiveSolution,
    #[error("{what} did not converge after {iterations} iterations")]
    NotConverged { what: &'static str, iterations: usize },
    #[error("perturbative sum did not stabilise under window enlargement (change {change:e})")]
    TruncationNotConverged { change: f64 },
    #[error("unsupported field power {0}")]
    UnsupportedPower(u32),
    #[error("eigensolver failed to converge")]
    EigensolverFailure,
    #[error("adaptive quadrature did not reach tolerance (error estimate {estimate:e})")]
    QuadratureNotConverged { estimate: f64 },
    #[error("argument outside the domain of definition (edge at {edge})")]
    OutsideDomain { edge: f64 },
    #[error("requested branch of the bare coupling does not exist (lambda_R * I_-1 = {product}, need >= {threshold})")]
    BranchUnavailable { product: f64, threshold: f64 },
}

impl Error {
    /// Errors caused by the caller's input rather than by a numerical failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::PhaseNotAvailable { .. }
                | Error::WrongClass
                | Error::UnsupportedPower(_)
                | Error::OutsideDomain { .. }
                | Error::BranchUnavailable { .. }
        )
    }
}
