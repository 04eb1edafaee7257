//! Plane primitives: points, ellipses, signed circles and conics.

mod circle;
mod conic;
mod ellipse;
mod point;

pub use circle::{power, SignedCircle};
pub use conic::{conic_classify, ConicClass, ConicCoeffs};
pub use ellipse::{normalize_axis_angle, EllipseSpec};
pub use point::PlanePoint;

/// Semi-axes closer than this are treated as a circle (rotation forced to 0).
pub const CIRCLE_TOL: f64 = 1e-12;

/// Eigen-decomposition of the symmetric matrix `[[a, b], [b, c]]`.
///
/// Returns `(larger, smaller, angle)` where `angle` is the direction of the
/// eigenvector belonging to the larger eigenvalue.
pub(crate) fn sym2_eigen(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b);
    let hi = mean + radius;
    let det = a * c - b * b;
    let lo = if hi.abs() > 0.0 { det / hi } else { mean - radius };
    let angle = 0.5 * (2.0 * b).atan2(a - c);
    (hi, lo, angle)
}
