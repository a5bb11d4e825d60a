use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the documented domain.
    Domain(&'static str),
    /// The quantity is singular at the requested point (e.g. the `n = 1`
    /// density at the origin).
    Singularity(&'static str),
    /// The result overflows or underflows `f64`; use the scaled variant.
    Range(&'static str),
    /// A series lost more precision than the accuracy budget allows.
    PrecisionLoss { what: &'static str, rel_err: f64 },
    /// An iterative method hit its iteration cap.
    NoConvergence {
        what: &'static str,
        best: f64,
        err_est: f64,
    },
    /// Tail contributions of an expectation did not decay.
    Growth(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Singularity(msg) => write!(f, "singularity: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::PrecisionLoss { what, rel_err } => {
                write!(f, "precision loss in {what}: relative error ~{rel_err:e}")
            }
            Error::NoConvergence {
                what,
                best,
                err_est,
            } => write!(
                f,
                "{what} did not converge (best {best}, error estimate {err_est:e})"
            ),
            Error::Growth(msg) => write!(f, "integrand growth: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Short machine-readable tag, used by the CLI's JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Singularity(_) => "singularity",
            Error::Range(_) => "range",
            Error::PrecisionLoss { .. } => "precision_loss",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Growth(_) => "growth",
        }
    }
}
