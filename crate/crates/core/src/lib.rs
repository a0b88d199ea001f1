//! Numerical laboratory for Eisenstein functions of the modular surface
//! at spectral parameters off the real axis.
//!
//! The library is organised bottom-up:
//!
//! - [`specfun`]: self-contained complex special functions (log-Gamma,
//!   Riemann zeta on vertical lines, modified Bessel K with complex order),
//!   compensated summation with a deterministic reduction tree, and
//!   adaptive Gauss-Kronrod quadrature.
//! - [`hyperbolic`]: exact geometry of the hyperbolic plane: Moebius
//!   actions, boundary derivatives in the ball model, the geodesic frame
//!   flow, endpoint coordinates on the unit tangent bundle, and canonical
//!   cusp coordinates.
//! - [`modgroup`]: PSL(2,Z) coset enumeration with certified truncation
//!   tails, and reduction to the standard fundamental domain.
//! - [`eisenstein`]: evaluation of the Eisenstein function by its coset
//!   series, Fourier modes in the cusp, and the scattering coefficient by
//!   two independent routes.
//! - [`psmeasure`]: the limiting phase-space measure, paired with
//!   observables by geodesic-flow propagation and, independently, by its
//!   boundary-atom representation.

pub mod error;
pub mod eisenstein;
pub mod hyperbolic;
pub mod modgroup;
pub mod psmeasure;
pub mod specfun;

pub use error::{Error, Result};
