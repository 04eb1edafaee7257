use serde::{Deserialize, Serialize};

use super::PlanePoint;

/// Circle with a signed squared radius. Negative `r2` occurs for the polar
/// circle of an acute triangle and for imaginary members of a coaxial pencil;
/// the power of a point uses `r2` as-is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedCircle {
    pub center: PlanePoint,
    pub r2: f64,
}

impl SignedCircle {
    pub fn new(center: PlanePoint, r2: f64) -> Self {
        Self { center, r2 }
    }

    pub fn with_radius(center: PlanePoint, r: f64) -> Self {
        Self { center, r2: r * r }
    }

    /// Coefficients `(D, E, F)` of `x^2 + y^2 + Dx + Ey + F = 0`.
    pub fn coeffs(&self) -> [f64; 3] {
        let c = self.center;
        [-2.0 * c.x, -2.0 * c.y, c.norm_sqr() - self.r2]
    }

    pub fn from_coeffs([d, e, f]: [f64; 3]) -> Self {
        let center = PlanePoint::new(-0.5 * d, -0.5 * e);
        Self { center, r2: 0.25 * (d * d + e * e) - f }
    }

    pub fn radius(&self) -> Option<f64> {
        (self.r2 >= 0.0).then(|| self.r2.sqrt())
    }

    pub fn power(&self, p: PlanePoint) -> f64 {
        (p - self.center).norm_sqr() - self.r2
    }
}

/// Power of `p` with respect to `circle`: `|p - center|^2 - r2`.
pub fn power(p: PlanePoint, circle: &SignedCircle) -> f64 {
    circle.power(p)
}
