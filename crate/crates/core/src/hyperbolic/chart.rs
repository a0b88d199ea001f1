//! Endpoint coordinates on the unit tangent bundle.
//!
//! A frame is parametrized by the two boundary endpoints of its geodesic
//! and the flow time from the point of the geodesic closest to `i`. The
//! parametrization is equivariant: an isometry shifts the time coordinate
//! by half the log-ratio of its ball-model boundary derivatives at the two
//! endpoints.

use super::{BoundaryPoint, FlowFrame, HPoint, Mobius};

/// Coordinates `(backward endpoint, forward endpoint, time)` of a frame.
#[derive(Clone, Copy, Debug)]
pub struct GeodesicCoords {
    pub backward: BoundaryPoint,
    pub forward: BoundaryPoint,
    pub time: f64,
}

impl GeodesicCoords {
    pub fn new(backward: BoundaryPoint, forward: BoundaryPoint, time: f64) -> Self {
        assert!(
            !backward.approx_eq(&forward, 0.0),
            "GeodesicCoords: endpoints must differ"
        );
        GeodesicCoords { backward, forward, time }
    }

    /// Frame at the given coordinates.
    pub fn to_frame(&self) -> FlowFrame {
        Geodesic::new(self.backward, self.forward).frame_at(self.time)
    }

    /// Coordinates of a frame: backward/forward endpoints of its geodesic
    /// and the time from the closest point to `i`.
    pub fn of_frame(frame: &FlowFrame) -> GeodesicCoords {
        let g = frame.matrix();
        // Flowing to +/- infinity sends the base to g(inf) = a/c and
        // g(0) = b/d respectively.
        let forward = if g.c == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(g.a / g.c)
        };
        let backward = if g.d == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(g.b / g.d)
        };
        let geo = Geodesic::new(backward, forward);
        let time = geo.time_of(&frame.base());
        GeodesicCoords { backward, forward, time }
    }
}

/// Oriented geodesic with precomputed chart data: `axis.apply` maps it to
/// the upward imaginary axis, and `time` 0 sits at the point closest to `i`.
#[derive(Clone, Copy, Debug)]
pub struct Geodesic {
    /// Maps the backward endpoint to 0 and the forward endpoint to infinity.
    axis: Mobius,
    axis_inv: Mobius,
    /// log |axis(i)|; the closest point to `i` is axis^{-1}(i e^{log_scale}).
    log_scale: f64,
}

impl Geodesic {
    pub fn new(backward: BoundaryPoint, forward: BoundaryPoint) -> Self {
        let axis = axis_map(backward, forward);
        let w = axis.apply(HPoint::I);
        let log_scale = 0.5 * (w.x * w.x + w.y * w.y).ln();
        Geodesic { axis, axis_inv: axis.inverse(), log_scale }
    }

    /// Frame at chart time `t`: base point on the geodesic, direction
    /// toward the forward endpoint.
    pub fn frame_at(&self, t: f64) -> FlowFrame {
        FlowFrame::from_matrix(self.axis_inv).flow(t + self.log_scale)
    }

    /// Chart time of the orthogonal projection of `z` onto the geodesic.
    pub fn time_of(&self, z: &HPoint) -> f64 {
        let w = self.axis.apply(*z);
        0.5 * (w.x * w.x + w.y * w.y).ln() - self.log_scale
    }

    /// `(t*, cosh d)` of the point closest to `z` on the geodesic: chart
    /// time of the projection and cosh of the distance to it.
    pub fn nearest(&self, z: &HPoint) -> (f64, f64) {
        let w = self.axis.apply(*z);
        let norm = (w.x * w.x + w.y * w.y).sqrt();
        (norm.ln() - self.log_scale, norm / w.y)
    }
}

/// Unimodular map sending `q1` to 0 and `q2` to infinity.
fn axis_map(q1: BoundaryPoint, q2: BoundaryPoint) -> Mobius {
    match (q1, q2) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
            assert!(p != q, "axis_map: coincident endpoints");
            if p > q {
                Mobius::new(1.0, -p, 1.0, -q)
            } else {
                // negate the first row to keep the determinant positive
                Mobius::new(-1.0, p, 1.0, -q)
            }
        }
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(q)) => Mobius::new(0.0, -1.0, 1.0, -q),
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) => Mobius::new(1.0, -p, 0.0, 1.0),
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {
            panic!("axis_map: coincident endpoints at infinity")
        }
    }
}
