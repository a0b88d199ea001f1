//! Canonical cusp coordinates for the modular surface.
//!
//! The cusp chart is `z = (theta + i e^r) / (2 pi)`, so the circle `r = 0`
//! has length 2 pi and the half-plane metric pulls back to
//! `dr^2 + e^{-2r} d theta^2`.

use std::f64::consts::TAU;

use super::HPoint;
use crate::error::{Error, Result};

/// Lower edge of the cusp chart, `log(2 pi * 1.1)`: the region `y > 1.1`,
/// strictly inside the embedded neighbourhood `y > 1`.
pub fn r_cusp() -> f64 {
    (TAU * 1.1).ln()
}

/// Point of the cusp chart; `theta` is stored in `[0, 2 pi)`.
///
/// The canonical cusp region is `r > r_cusp()`; the chart formula itself
/// extends to every real `r`, which the measure quadratures use, so only
/// finiteness is enforced here. [`h_to_cusp`] keeps the strict region check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspCoord {
    pub r: f64,
    pub theta: f64,
}

impl CuspCoord {
    pub fn new(r: f64, theta: f64) -> Self {
        assert!(r.is_finite(), "CuspCoord::new: r = {r}");
        CuspCoord { r, theta: theta.rem_euclid(TAU) }
    }
}

/// Chart map into the half-plane: `z = (theta + i e^r) / (2 pi)`.
pub fn cusp_to_h(c: &CuspCoord) -> HPoint {
    HPoint::new(c.theta / TAU, c.r.exp() / TAU)
}

/// Inverse chart; rejects points below the cusp region boundary `y > 1.1`.
pub fn h_to_cusp(z: &HPoint) -> Result<CuspCoord> {
    if z.y <= r_cusp().exp() / TAU {
        return Err(Error::Domain(format!(
            "h_to_cusp: y = {} at or below the cusp boundary 1.1",
            z.y
        )));
    }
    Ok(CuspCoord { r: (TAU * z.y).ln(), theta: (TAU * z.x).rem_euclid(TAU) })
}
