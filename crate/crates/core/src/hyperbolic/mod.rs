//! Exact geometry of the hyperbolic plane in the upper half-plane model:
//! Moebius actions, boundary derivatives in the ball model, and the
//! geodesic frame flow.
//!
//! Frames of the unit tangent bundle are stored as unimodular matrices, so
//! composition and the flow are matrix products and never touch
//! trigonometry.

mod chart;
mod cusp;

pub use chart::{Geodesic, GeodesicCoords};
pub use cusp::{cusp_to_h, h_to_cusp, r_cusp, CuspCoord};

use num_complex::Complex64;

/// Determinant drift above which a matrix is renormalized back to det 1.
const DET_DRIFT: f64 = 1e-13;

/// Real 2x2 matrix of determinant one, identified projectively with its
/// negative; the carrier of every group and flow action in the crate.
#[derive(Clone, Copy, Debug)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Build from entries, rescaling to determinant one. The determinant
    /// must be positive: orientation-reversing input is a caller bug.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        let det = a * d - b * c;
        assert!(det > 0.0 && det.is_finite(), "Mobius::new: determinant {det} not positive");
        if (det - 1.0).abs() > DET_DRIFT {
            let s = det.sqrt();
            Mobius { a: a / s, b: b / s, c: c / s, d: d / s }
        } else {
            Mobius { a, b, c, d }
        }
    }

    /// Translation z -> z + n.
    pub fn translation(n: f64) -> Self {
        Mobius { a: 1.0, b: n, c: 0.0, d: 1.0 }
    }

    /// The inversion z -> -1/z.
    pub fn inversion() -> Self {
        Mobius { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Mobius::new(self.d, -self.b, -self.c, self.a)
    }

    /// Apply to a point of the upper half-plane.
    pub fn apply(&self, z: HPoint) -> HPoint {
        let zc = z.to_complex();
        let w = (self.a * zc + self.b) / (self.c * zc + self.d);
        HPoint::new(w.re, w.im)
    }

    /// Imaginary part of the image, `y / ((cx+d)^2 + c^2 y^2)`; avoids the
    /// cancellation of taking `apply(..).y`.
    pub fn apply_im(&self, z: HPoint) -> f64 {
        let u = self.c * z.x + self.d;
        z.y / (u * u + self.c * self.c * z.y * z.y)
    }

    /// Action on the conformal boundary.
    pub fn apply_boundary(&self, q: BoundaryPoint) -> BoundaryPoint {
        match q {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(q) => {
                let den = self.c * q + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * q + self.b) / den)
                }
            }
        }
    }

    /// Modulus of the boundary derivative in the ball model:
    /// `(q^2 + 1) / ((aq+b)^2 + (cq+d)^2)`, and `1/(a^2 + c^2)` at infinity.
    pub fn ball_deriv(&self, q: BoundaryPoint) -> f64 {
        match q {
            BoundaryPoint::Infinity => 1.0 / (self.a * self.a + self.c * self.c),
            BoundaryPoint::Finite(q) => {
                let num = q * q + 1.0;
                let u = self.a * q + self.b;
                let v = self.c * q + self.d;
                let den = u * u + v * v;
                assert!(den > 0.0, "ball_deriv: degenerate image");
                num / den
            }
        }
    }

    /// Projective comparison (up to sign) within `tol` per entry.
    pub fn approx_eq(&self, other: &Mobius, tol: f64) -> bool {
        let close = |s: f64| -> bool {
            (self.a - s * other.a).abs() <= tol
                && (self.b - s * other.b).abs() <= tol
                && (self.c - s * other.c).abs() <= tol
                && (self.d - s * other.d).abs() <= tol
        };
        close(1.0) || close(-1.0)
    }
}

impl std::ops::Mul for Mobius {
    type Output = Mobius;
    fn mul(self, rhs: Mobius) -> Mobius {
        Mobius::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

/// Point of the upper half-plane; `y > 0` is enforced at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Self {
        assert!(
            y > 0.0 && y.is_finite() && x.is_finite(),
            "HPoint::new: ({x}, {y}) not in the open upper half-plane"
        );
        HPoint { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        HPoint::new(z.re, z.im)
    }

    /// Hyperbolic distance.
    pub fn dist(&self, other: &HPoint) -> f64 {
        self.cosh_dist(other).acosh()
    }

    /// `cosh` of the hyperbolic distance: `1 + |z - w|^2 / (2 Im z Im w)`.
    pub fn cosh_dist(&self, other: &HPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        1.0 + (dx * dx + dy * dy) / (2.0 * self.y * other.y)
    }
}

/// Point of the conformal boundary: a real number or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(q: f64) -> Self {
        assert!(q.is_finite(), "BoundaryPoint::finite: {q}");
        BoundaryPoint::Finite(q)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Approximate equality; infinity only equals infinity.
    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => (p - q).abs() <= tol,
            _ => false,
        }
    }
}

/// Frame of the unit tangent bundle: the base point is `g(i)` and the
/// direction is the image of the upward unit vector at `i`.
#[derive(Clone, Copy, Debug)]
pub struct FlowFrame {
    g: Mobius,
}

impl FlowFrame {
    pub fn identity() -> Self {
        FlowFrame { g: Mobius::IDENTITY }
    }

    pub fn from_matrix(g: Mobius) -> Self {
        FlowFrame { g }
    }

    pub fn matrix(&self) -> Mobius {
        self.g
    }

    /// Upward-pointing frame based at `z`.
    pub fn upward_at(z: HPoint) -> Self {
        let s = z.y.sqrt();
        FlowFrame { g: Mobius::new(s, z.x / s, 0.0, 1.0 / s) }
    }

    /// Downward-pointing frame based at `z`; these are the `p_r = -1`,
    /// `p_theta = 0` frames of the cusp, since the base descends its
    /// vertical geodesic under the flow.
    pub fn downward_at(z: HPoint) -> Self {
        let s = z.y.sqrt();
        // upward frame composed with rotation by pi about the base point
        FlowFrame { g: Mobius::new(z.x / s, -s, 1.0 / s, 0.0) }
    }

    pub fn base(&self) -> HPoint {
        self.g.apply(HPoint::I)
    }

    /// Euclidean tangent vector at the base point; hyperbolic norm one,
    /// i.e. Euclidean norm equal to the base height.
    pub fn direction(&self) -> Complex64 {
        // g'(i) = 1/(ci + d)^2 applied to the upward unit vector i
        let den = Complex64::new(self.g.d, self.g.c);
        Complex64::new(0.0, 1.0) / (den * den)
    }

    /// Direction angle in `[0, 2pi)`.
    pub fn direction_angle(&self) -> f64 {
        let v = self.direction();
        let a = v.im.atan2(v.re);
        if a < 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }

    /// Geodesic flow for time `t`: right multiplication by
    /// `diag(e^{t/2}, e^{-t/2})`. The base traverses the unit-speed geodesic
    /// through `g(i)` in the frame direction.
    pub fn flow(&self, t: f64) -> FlowFrame {
        assert!(t.abs() <= 200.0, "FlowFrame::flow: |t| = {} would overflow entries", t.abs());
        let e = (0.5 * t).exp();
        FlowFrame { g: Mobius::new(self.g.a * e, self.g.b / e, self.g.c * e, self.g.d / e) }
    }

    /// Left action of an isometry on the frame.
    pub fn transformed(&self, m: &Mobius) -> FlowFrame {
        FlowFrame { g: *m * self.g }
    }

    /// Frames agree when base points and directions agree within `tol`
    /// (hyperbolic distance and angle respectively).
    pub fn approx_eq(&self, other: &FlowFrame, tol: f64) -> bool {
        if self.base().dist(&other.base()) > tol {
            return false;
        }
        let da = (self.direction_angle() - other.direction_angle()).abs();
        da <= tol || (2.0 * std::f64::consts::PI - da) <= tol
    }
}

#[cfg(test)]
pub(crate) fn random_mobius(rng: &mut impl rand::Rng) -> Mobius {
    // Random products of translations, dilations, and inversions keep the
    // conditioning reasonable.
    let mut m = Mobius::IDENTITY;
    for _ in 0..4 {
        let t = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(0.2..3.0);
        m = m * Mobius::translation(t);
        m = m * Mobius::new(s, 0.0, 0.0, 1.0 / s);
        if rng.gen_bool(0.5) {
            m = m * Mobius::inversion();
        }
    }
    m
}
