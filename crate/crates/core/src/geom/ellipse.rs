use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use super::{sym2_eigen, ConicCoeffs, PlanePoint, CIRCLE_TOL};
use crate::error::{Error, Result};

/// Ellipse given by center, semi-axes `a >= b > 0` and the rotation of the
/// major axis, normalized to `(-pi/2, pi/2]` (zero for circles).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseSpec {
    pub center: PlanePoint,
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

/// Maps an angle onto the half-open interval `(-pi/2, pi/2]`.
pub fn normalize_axis_angle(theta: f64) -> f64 {
    let t = theta - PI * ((theta - FRAC_PI_2) / PI).ceil();
    if t <= -FRAC_PI_2 {
        t + PI
    } else {
        t
    }
}

impl EllipseSpec {
    /// Builds a normalized ellipse. Swaps the axes (and turns the frame by a
    /// quarter) when `b > a`.
    pub fn new(center: PlanePoint, a: f64, b: f64, theta: f64) -> Self {
        debug_assert!(a > 0.0 && b > 0.0, "semi-axes must be positive");
        let (a, b, theta) = if b > a { (b, a, theta + FRAC_PI_2) } else { (a, b, theta) };
        let theta = if a - b < CIRCLE_TOL { 0.0 } else { normalize_axis_angle(theta) };
        Self { center, a, b, theta }
    }

    /// Like [`EllipseSpec::new`] but rejects non-finite or non-positive axes.
    pub fn try_new(center: PlanePoint, a: f64, b: f64, theta: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 && theta.is_finite() && center.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad ellipse ({a}, {b}, {theta})")));
        }
        Ok(Self::new(center, a, b, theta))
    }

    pub fn circle(center: PlanePoint, r: f64) -> Self {
        Self::new(center, r, r, 0.0)
    }

    pub fn axis_aligned(a: f64, b: f64) -> Self {
        Self::new(PlanePoint::ORIGIN, a, b, 0.0)
    }

    pub fn is_circle(&self) -> bool {
        self.a - self.b < CIRCLE_TOL
    }

    /// Half focal distance `c = sqrt(a^2 - b^2)`.
    pub fn half_focal(&self) -> f64 {
        ((self.a - self.b) * (self.a + self.b)).max(0.0).sqrt()
    }

    pub fn point_at(&self, t: f64) -> PlanePoint {
        let local = PlanePoint::new(self.a * t.cos(), self.b * t.sin());
        self.center + local.rotated(self.theta)
    }

    pub fn sample(&self, n: usize) -> Vec<PlanePoint> {
        (0..n).map(|k| self.point_at(TAU * k as f64 / n as f64)).collect()
    }

    pub fn foci(&self) -> (PlanePoint, PlanePoint) {
        let offset = PlanePoint::new(self.half_focal(), 0.0).rotated(self.theta);
        (self.center + offset, self.center - offset)
    }

    /// Coordinates of `p` in the frame where this ellipse is the unit circle.
    fn unit_coords(&self, p: PlanePoint) -> PlanePoint {
        let local = (p - self.center).rotated(-self.theta);
        PlanePoint::new(local.x / self.a, local.y / self.b)
    }

    fn world_coords(&self, q: PlanePoint) -> PlanePoint {
        self.center + PlanePoint::new(q.x * self.a, q.y * self.b).rotated(self.theta)
    }

    /// Normalized implicit value: negative inside, zero on, positive outside.
    pub fn implicit(&self, p: PlanePoint) -> f64 {
        self.unit_coords(p).norm_sqr() - 1.0
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        self.implicit(p) < 0.0
    }

    /// Half-widths of the axis-aligned bounding box.
    pub fn half_extents(&self) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        let hx = (self.a * self.a * c * c + self.b * self.b * s * s).sqrt();
        let hy = (self.a * self.a * s * s + self.b * self.b * c * c).sqrt();
        (hx, hy)
    }

    pub fn to_conic(&self) -> ConicCoeffs {
        let (s, c) = self.theta.sin_cos();
        let ia = 1.0 / (self.a * self.a);
        let ib = 1.0 / (self.b * self.b);
        let qa = c * c * ia + s * s * ib;
        let qb = 2.0 * s * c * (ia - ib);
        let qc = s * s * ia + c * c * ib;
        let (x0, y0) = (self.center.x, self.center.y);
        let d = -2.0 * qa * x0 - qb * y0;
        let e = -qb * x0 - 2.0 * qc * y0;
        let f = qa * x0 * x0 + qb * x0 * y0 + qc * y0 * y0 - 1.0;
        ConicCoeffs::normalized([qa, qb, qc, d, e, f])
    }

    /// Image of the ellipse under the linear map `x -> m x`.
    pub fn linear_image(&self, m: &Matrix2<f64>) -> Result<Self> {
        let det = m.determinant();
        if det.abs() < 1e-14 {
            return Err(Error::SingularMap { det });
        }
        let (s, c) = self.theta.sin_cos();
        let shape = m * Matrix2::new(c, -s, s, c) * Matrix2::new(self.a, 0.0, 0.0, self.b);
        let gram = shape * shape.transpose();
        let (hi, lo, angle) = sym2_eigen(gram[(0, 0)], gram[(0, 1)], gram[(1, 1)]);
        let center = m * nalgebra::Vector2::new(self.center.x, self.center.y);
        Ok(Self::new(PlanePoint::new(center.x, center.y), hi.sqrt(), lo.max(0.0).sqrt(), angle))
    }

    /// Tangency points of the two tangent lines through an exterior point.
    ///
    /// The first point is the one for which the ellipse lies to the left of
    /// the ray from `p` to it, i.e. the tangent that winds counter-clockwise
    /// around the ellipse.
    pub fn tangents_from(&self, p: PlanePoint) -> Result<(PlanePoint, PlanePoint)> {
        let q = self.unit_coords(p);
        let r2 = q.norm_sqr();
        if r2 <= 1.0 {
            return Err(Error::PointInside);
        }
        let s = (r2 - 1.0).sqrt();
        let left = (1.0 / r2) * (q + s * q.perp());
        let right = (1.0 / r2) * (q - s * q.perp());
        Ok((self.world_coords(left), self.world_coords(right)))
    }

    /// Second intersection of the line through `on` (a point of the ellipse)
    /// and `through` with the ellipse.
    pub fn chord_end(&self, on: PlanePoint, through: PlanePoint) -> PlanePoint {
        let p = self.unit_coords(on);
        let d = self.unit_coords(through) - p;
        let t = -2.0 * p.dot(d) / d.norm_sqr();
        self.world_coords(p + t * d)
    }

    /// Tangency defect of the line through `p1` and `p2`: the distance from
    /// the center to the line in the unit-circle frame, minus one.
    pub fn line_tangency(&self, p1: PlanePoint, p2: PlanePoint) -> f64 {
        let (u, v) = (self.unit_coords(p1), self.unit_coords(p2));
        let d = v - u;
        (u.cross(d).abs() / d.norm() - 1.0).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn point_at_examples() {
        let unit = EllipseSpec::circle(PlanePoint::ORIGIN, 1.0);
        let p = unit.point_at(0.0);
        assert_abs_diff_eq!(p.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 0.0, epsilon = 1e-15);

        let e = EllipseSpec::axis_aligned(2.0, 1.0);
        let p = e.point_at(FRAC_PI_2);
        assert_abs_diff_eq!(p.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 1.0, epsilon = 1e-15);

        let e = EllipseSpec::new(PlanePoint::ORIGIN, 2.0, 1.0, PI / 4.0);
        let p = e.point_at(0.0);
        assert_abs_diff_eq!(p.x, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 2f64.sqrt(), epsilon = 1e-15);
        for k in 0..16 {
            assert!(e.implicit(e.point_at(k as f64 * 0.4)).abs() < 1e-12);
        }
    }

    #[test]
    fn foci_examples() {
        let (f1, f2) = EllipseSpec::axis_aligned(2.0, 1.0).foci();
        assert_abs_diff_eq!(f1.x, 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f2.x, -(3f64.sqrt()), epsilon = 1e-15);

        let c = EllipseSpec::circle(PlanePoint::new(0.3, 0.2), 0.7);
        assert_eq!(c.foci(), (c.center, c.center));

        let (f1, f2) = EllipseSpec::new(PlanePoint::new(1.0, 1.0), 5.0, 3.0, 0.0).foci();
        assert_abs_diff_eq!(f1.x, 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f2.x, -3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f1.y, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn normalization_swaps_axes_and_wraps_angle() {
        let e = EllipseSpec::new(PlanePoint::ORIGIN, 1.0, 2.0, 0.0);
        assert_eq!((e.a, e.b), (2.0, 1.0));
        assert_abs_diff_eq!(e.theta, FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(normalize_axis_angle(-FRAC_PI_2), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(normalize_axis_angle(3.0 * PI + 0.1), 0.1, epsilon = 1e-14);
        assert_eq!(EllipseSpec::new(PlanePoint::ORIGIN, 1.0, 1.0, 0.7).theta, 0.0);
    }

    #[test]
    fn linear_image_examples() {
        let e = EllipseSpec::new(PlanePoint::new(0.1, -0.2), 1.3, 0.4, 0.6);
        let same = e.linear_image(&Matrix2::identity()).unwrap();
        assert_abs_diff_eq!(same.a, e.a, epsilon = 1e-14);
        assert_abs_diff_eq!(same.b, e.b, epsilon = 1e-14);
        assert_abs_diff_eq!(same.theta, e.theta, epsilon = 1e-14);

        let unit = EllipseSpec::axis_aligned(2.0, 1.0).linear_image(&Matrix2::new(0.5, 0.0, 0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(unit.a, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(unit.b, 1.0, epsilon = 1e-15);

        let img = EllipseSpec::circle(PlanePoint::new(0.2, 0.0), 0.5)
            .linear_image(&Matrix2::new(1.5, 0.0, 0.0, 1.0))
            .unwrap();
        assert_abs_diff_eq!(img.center.x, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(img.a, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(img.b, 0.5, epsilon = 1e-15);
        assert_eq!(img.theta, 0.0);

        let m = Matrix2::new(0.3, -1.1, 0.8, 0.45);
        let img = e.linear_image(&m).unwrap();
        for p in e.sample(32) {
            let v = m * nalgebra::Vector2::new(p.x, p.y);
            assert!(img.implicit(PlanePoint::new(v.x, v.y)).abs() < 1e-10);
        }

        let err = e.linear_image(&Matrix2::new(1.0, 2.0, 0.5, 1.0)).unwrap_err();
        assert!(matches!(err, Error::SingularMap { .. }));
    }

    #[test]
    fn tangents_from_unit_circle() {
        let unit = EllipseSpec::circle(PlanePoint::ORIGIN, 1.0);
        let (t1, t2) = unit.tangents_from(PlanePoint::new(2.0, 0.0)).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_abs_diff_eq!(t1.x, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t1.y, h, epsilon = 1e-15);
        assert_abs_diff_eq!(t2.y, -h, epsilon = 1e-15);

        let (t1, t2) = unit.tangents_from(PlanePoint::new(0.0, 2.0)).unwrap();
        assert_abs_diff_eq!(t1.x, -h, epsilon = 1e-15);
        assert_abs_diff_eq!(t2.x, h, epsilon = 1e-15);
        assert_abs_diff_eq!(t1.y, 0.5, epsilon = 1e-15);

        assert_eq!(unit.tangents_from(PlanePoint::new(0.2, 0.1)), Err(Error::PointInside));
        assert_eq!(unit.tangents_from(PlanePoint::new(1.0, 0.0)), Err(Error::PointInside));
    }

    #[test]
    fn chord_end_on_circle() {
        let unit = EllipseSpec::circle(PlanePoint::ORIGIN, 1.0);
        let q = unit.chord_end(PlanePoint::new(1.0, 0.0), PlanePoint::new(0.0, 0.0));
        assert_abs_diff_eq!(q.x, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y, 0.0, epsilon = 1e-15);
    }
}
