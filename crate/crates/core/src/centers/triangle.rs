use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PlanePoint;

/// Triangles with smaller absolute area are rejected as degenerate.
pub const AREA_TOL: f64 = 1e-14;
/// A vertex angle whose cosine is within this of zero counts as right.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;

/// A triangle `P1 P2 P3`; side `s_i` is opposite vertex `P_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [PlanePoint; 3],
}

impl Triangle {
    pub fn new(p1: PlanePoint, p2: PlanePoint, p3: PlanePoint) -> Self {
        Self { vertices: [p1, p2, p3] }
    }

    pub fn signed_area(&self) -> f64 {
        let [p1, p2, p3] = self.vertices;
        0.5 * (p2 - p1).cross(p3 - p1)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// `(s1, s2, s3)` with `s_i = |P_j - P_k|`.
    pub fn sidelengths(&self) -> Result<[f64; 3]> {
        if self.area() < AREA_TOL || !self.vertices.iter().all(|p| p.is_finite()) {
            return Err(Error::DegenerateTriangle);
        }
        let [p1, p2, p3] = self.vertices;
        let s = [p2.dist(p3), p3.dist(p1), p1.dist(p2)];
        let strict = (0..3).all(|i| s[i] < s[(i + 1) % 3] + s[(i + 2) % 3]);
        if !strict {
            return Err(Error::DegenerateTriangle);
        }
        Ok(s)
    }

    /// Normalized barycentric combination `sum w_i P_i / sum w_i`.
    pub fn barycentric_point(&self, w: [f64; 3]) -> Result<PlanePoint> {
        let mass: f64 = w.iter().sum();
        let scale: f64 = w.iter().map(|x| x.abs()).sum();
        if scale == 0.0 || mass.abs() <= 1e-14 * scale {
            return Err(Error::ZeroMass);
        }
        let [p1, p2, p3] = self.vertices;
        let x = (w[0] * p1.x + w[1] * p2.x + w[2] * p3.x) / mass;
        let y = (w[0] * p1.y + w[1] * p2.y + w[2] * p3.y) / mass;
        Ok(PlanePoint::new(x, y))
    }

    pub fn centroid(&self) -> PlanePoint {
        let [p1, p2, p3] = self.vertices;
        PlanePoint::new((p1.x + p2.x + p3.x) / 3.0, (p1.y + p2.y + p3.y) / 3.0)
    }

    /// Intersection of the perpendicular bisectors.
    pub fn circumcenter(&self) -> Result<PlanePoint> {
        self.sidelengths()?;
        let [p1, p2, p3] = self.vertices;
        let b = p2 - p1;
        let c = p3 - p1;
        let d = 2.0 * b.cross(c);
        let ux = (c.y * b.norm_sqr() - b.y * c.norm_sqr()) / d;
        let uy = (b.x * c.norm_sqr() - c.x * b.norm_sqr()) / d;
        Ok(p1 + PlanePoint::new(ux, uy))
    }

    pub fn circumradius(&self) -> Result<f64> {
        let [s1, s2, s3] = self.sidelengths()?;
        Ok(s1 * s2 * s3 / (4.0 * self.area()))
    }

    pub fn inradius(&self) -> Result<f64> {
        let s: f64 = self.sidelengths()?.iter().sum();
        Ok(2.0 * self.area() / s)
    }

    /// Cosines of the vertex angles, law of cosines.
    pub fn cosines(&self) -> Result<[f64; 3]> {
        let s = self.sidelengths()?;
        Ok(std::array::from_fn(|i| {
            let (a, b, c) = (s[i], s[(i + 1) % 3], s[(i + 2) % 3]);
            (b * b + c * c - a * a) / (2.0 * b * c)
        }))
    }

    pub fn is_right(&self) -> Result<bool> {
        Ok(self.cosines()?.iter().any(|c| c.abs() < RIGHT_ANGLE_TOL))
    }

    pub fn is_obtuse(&self) -> Result<bool> {
        Ok(self.cosines()?.iter().any(|&c| c < -RIGHT_ANGLE_TOL))
    }
}

/// Free-function form of [`Triangle::sidelengths`].
pub fn sidelengths(t: &Triangle) -> Result<[f64; 3]> {
    t.sidelengths()
}

/// Free-function form of [`Triangle::barycentric_point`].
pub fn barycentric_point(t: &Triangle, w: [f64; 3]) -> Result<PlanePoint> {
    t.barycentric_point(w)
}
