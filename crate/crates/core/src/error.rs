//! Error type shared by the fallible numerical routines.

use thiserror::Error;

/// Errors reported by evaluation routines. Contract violations that cannot
/// occur for valid data (negative determinants, points below the real axis)
/// panic instead; everything data-dependent comes through here.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the validated region of a routine.
    #[error("domain: {0}")]
    Domain(String),

    /// A requested tolerance cannot be certified within the configured
    /// truncation budget. `achieved` is the best certified bound.
    #[error("tolerance infeasible: requested {requested:.3e}, achieved {achieved:.3e}")]
    Tolerance { requested: f64, achieved: f64 },

    /// Linear system too ill-conditioned to solve reliably.
    #[error("ill-conditioned system: condition number {0:.3e}")]
    IllConditioned(f64),

    /// A quadrature exhausted its evaluation budget before converging.
    #[error("quadrature budget exhausted (error estimate {error:.3e})")]
    QuadratureBudget { error: f64 },

    /// A grid or node count exceeds the configured feasibility cap.
    #[error("infeasible work size: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
