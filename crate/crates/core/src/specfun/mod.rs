//! Self-contained complex special functions and summation/quadrature
//! utilities shared by every other module.
//!
//! Nothing here depends on an external special-function crate: the accuracy
//! claims are audited against the oracles in each submodule's tests.

mod bessel;
mod gamma;
mod quad;
mod sum;
mod zeta;

pub use bessel::bessel_k_cx_order;
pub use gamma::lgamma_cx;
pub use quad::{adaptive_quad, QuadResult};
pub use sum::{
    compensated_sum, compensated_sum_f64, merge_partials_c64, merge_partials_f64,
    par_compensated_sum, par_compensated_sum_f64, CompensatedC64, CompensatedF64,
};
pub use zeta::{zeta_cx, zeta_em};

pub(crate) use gamma::lgamma_real;

/// Tolerance and work budget for adaptive routines.
#[derive(Clone, Copy, Debug)]
pub struct AccuracyBudget {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl AccuracyBudget {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evals: usize) -> Self {
        assert!(abs_tol > 0.0 || rel_tol > 0.0, "AccuracyBudget: tolerances must be positive");
        assert!(abs_tol >= 0.0 && rel_tol >= 0.0);
        assert!(max_evals >= 16, "AccuracyBudget: max_evals >= 16");
        Self { abs_tol, rel_tol, max_evals }
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 0.0, max_evals: 200_000 }
    }
}
