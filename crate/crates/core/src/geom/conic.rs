use std::f64::consts::FRAC_PI_2;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::{sym2_eigen, EllipseSpec, PlanePoint};
use crate::error::{Error, Result};

/// Coefficients `(A, B, C, D, E, F)` of `Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0`,
/// scaled to unit Euclidean norm with the first nonzero quadratic
/// coefficient positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicCoeffs(pub [f64; 6]);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConicClass {
    Ellipse(EllipseSpec),
    Parabola,
    Hyperbola,
    Degenerate,
}

impl ConicClass {
    pub fn ellipse(&self) -> Option<&EllipseSpec> {
        match self {
            ConicClass::Ellipse(e) => Some(e),
            _ => None,
        }
    }
}

const DISCRIMINANT_TOL: f64 = 1e-12;
const SINGULAR_TOL: f64 = 1e-14;

impl ConicCoeffs {
    pub fn normalized(raw: [f64; 6]) -> Self {
        let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Self(raw);
        }
        let lead = raw.iter().take(3).chain(raw.iter().skip(3)).copied().find(|c| c.abs() > 1e-300).unwrap_or(1.0);
        let scale = lead.signum() / norm;
        Self(raw.map(|c| c * scale))
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.0
    }

    /// Value of the quadratic form at `p`.
    pub fn eval(&self, p: PlanePoint) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.0;
        b * b - 4.0 * a * c
    }

    fn full_determinant(&self) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        Matrix3::new(a, 0.5 * b, 0.5 * d, 0.5 * b, c, 0.5 * e, 0.5 * d, 0.5 * e, f).determinant()
    }

    pub fn classify(&self) -> Result<ConicClass> {
        let [a, b, c, d, e, f] = self.0;
        if a.abs().max(b.abs()).max(c.abs()) < SINGULAR_TOL {
            return Err(Error::DegenerateConic("vanishing quadratic part"));
        }
        if self.full_determinant().abs() < SINGULAR_TOL {
            return Ok(ConicClass::Degenerate);
        }
        let disc = self.discriminant();
        if disc > DISCRIMINANT_TOL {
            return Ok(ConicClass::Hyperbola);
        }
        if disc >= -DISCRIMINANT_TOL {
            return Ok(ConicClass::Parabola);
        }
        let det = -disc;
        let x0 = (b * e - 2.0 * c * d) / det;
        let y0 = (b * d - 2.0 * a * e) / det;
        let f0 = f + 0.5 * (d * x0 + e * y0);
        let (hi, lo, angle) = sym2_eigen(a, 0.5 * b, c);
        // With A > 0 both eigenvalues are positive; a real ellipse needs F0 < 0.
        if f0 >= 0.0 || lo <= 0.0 {
            return Ok(ConicClass::Degenerate);
        }
        let major = (-f0 / lo).sqrt();
        let minor = (-f0 / hi).sqrt();
        Ok(ConicClass::Ellipse(EllipseSpec::new(PlanePoint::new(x0, y0), major, minor, angle + FRAC_PI_2)))
    }
}

/// Classifies a conic, returning its geometric parameters when elliptic.
pub fn conic_classify(c: &ConicCoeffs) -> Result<ConicClass> {
    c.classify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn classify_examples() {
        let circle = ConicCoeffs::normalized([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let e = *circle.classify().unwrap().ellipse().unwrap();
        assert_abs_diff_eq!(e.a, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.b, 1.0, epsilon = 1e-14);
        assert_eq!(e.theta, 0.0);

        let ell = ConicCoeffs::normalized([0.25, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let e = *ell.classify().unwrap().ellipse().unwrap();
        assert_abs_diff_eq!(e.a, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.b, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.theta, 0.0, epsilon = 1e-14);

        let pair = ConicCoeffs::normalized([1.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(pair.classify().unwrap(), ConicClass::Degenerate);

        let hyp = ConicCoeffs::normalized([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]);
        assert_eq!(hyp.classify().unwrap(), ConicClass::Hyperbola);
        let par = ConicCoeffs::normalized([1.0, 0.0, 0.0, 0.0, -1.0, 0.0]);
        assert_eq!(par.classify().unwrap(), ConicClass::Parabola);
        let imaginary = ConicCoeffs::normalized([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        assert_eq!(imaginary.classify().unwrap(), ConicClass::Degenerate);

        let line = ConicCoeffs::normalized([0.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        assert!(matches!(line.classify(), Err(Error::DegenerateConic(_))));
    }

    #[test]
    fn normalization_convention() {
        let c = ConicCoeffs::normalized([-2.0, 0.0, -2.0, 0.0, 0.0, 2.0]);
        let norm: f64 = c.0.iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-15);
        assert!(c.0[0] > 0.0);
        let c = ConicCoeffs::normalized([0.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(c.0[1] > 0.0);
    }

    #[test]
    fn tilted_ellipse_round_trip() {
        let e = EllipseSpec::new(PlanePoint::new(-0.4, 0.9), 1.7, 0.3, -1.2);
        let back = *e.to_conic().classify().unwrap().ellipse().unwrap();
        assert_abs_diff_eq!(back.center.x, e.center.x, epsilon = 1e-12);
        assert_abs_diff_eq!(back.center.y, e.center.y, epsilon = 1e-12);
        assert_abs_diff_eq!(back.a, e.a, epsilon = 1e-12);
        assert_abs_diff_eq!(back.b, e.b, epsilon = 1e-12);
        assert_abs_diff_eq!(back.theta, e.theta, epsilon = 1e-12);
    }
}
