use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::{confocal_delta, sample_family, FamilyHandle, ShearFrame};
use crate::error::{Error, Result};
use crate::geom::{normalize_axis_angle, ConicCoeffs, EllipseSpec, PlanePoint};

/// Semi-axis difference below which a Lemma locus collapses to a segment.
pub const SEGMENT_TOL: f64 = 1e-12;

/// The curve `u λ + v / λ + w`, `|λ| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LemmaLocus {
    Ellipse(EllipseSpec),
    /// `|u| = |v|`: a segment of half-length `2|u|` through `center`.
    Segment {
        center: PlanePoint,
        half_length: f64,
        theta: f64,
    },
}

impl LemmaLocus {
    pub fn center(&self) -> PlanePoint {
        match self {
            LemmaLocus::Ellipse(e) => e.center,
            LemmaLocus::Segment { center, .. } => *center,
        }
    }

    pub fn ellipse(&self) -> Option<&EllipseSpec> {
        match self {
            LemmaLocus::Ellipse(e) => Some(e),
            LemmaLocus::Segment { .. } => None,
        }
    }
}

pub fn lemma_ellipse(u: Complex64, v: Complex64, w: Complex64) -> LemmaLocus {
    let (nu, nv) = (u.norm(), v.norm());
    let theta = normalize_axis_angle(0.5 * (u.arg() + v.arg()));
    let center = PlanePoint::from_complex(w);
    if (nu - nv).abs() < SEGMENT_TOL {
        return LemmaLocus::Segment { center, half_length: nu + nv, theta };
    }
    LemmaLocus::Ellipse(EllipseSpec::new(center, nu + nv, (nu - nv).abs(), theta))
}

/// Locus of `alpha X2 + beta X3` over a family, in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedLocus {
    pub u: Complex64,
    pub v: Complex64,
    pub w: Complex64,
    /// Centers of the real combinations `(1 - γ) X2 + γ X3` are `w0 + γ w1`.
    pub w0: Complex64,
    pub w1: Complex64,
    pub shape: LemmaLocus,
}

impl PredictedLocus {
    pub fn at(&self, lambda: Complex64) -> Complex64 {
        self.u * lambda + self.v / lambda + self.w
    }

    pub fn center_at_gamma(&self, gamma: f64) -> Complex64 {
        self.w0 + gamma * self.w1
    }
}

pub fn predicted_locus(h: &FamilyHandle, alpha: Complex64, beta: Complex64) -> PredictedLocus {
    let (p, q, f, g) = (h.p, h.q, h.f, h.g);
    let (fc, gc) = (f.conj(), g.conj());
    let (sum, sum_c) = (f + g, fc + gc);
    let (p2, q2) = (p * p, q * q);
    let den = 3.0 * (p - q) * (p + q);
    let a3b = alpha + 3.0 * beta;
    let u = p * (fc * gc * (alpha * p2 - q2 * a3b) + 3.0 * beta * p * q) / den;
    let v = beta * p * q * (q - f * g * p) / ((q - p) * (p + q)) + alpha * f * g * q / 3.0;
    let w = (q * sum_c * (p2 * a3b - alpha * q2) + p * sum * (alpha * p2 - q2 * a3b)) / den;
    let w0 = (q * sum_c + p * sum) / 3.0;
    let w1 = (q * (2.0 * p2 + q2) * sum_c - p * sum * (p2 + 2.0 * q2)) / den;
    PredictedLocus { u, v, w, w0, w1, shape: lemma_ellipse(u, v, w) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleLocus {
    pub gamma: f64,
    pub center: PlanePoint,
    pub radius: f64,
}

fn require_circle(h: &FamilyHandle) -> Result<()> {
    if h.q.abs() > 1e-12 {
        return Err(Error::InvalidArgument("outer ellipse must be a circle".into()));
    }
    Ok(())
}

/// Circular loci of `(1 - γ) X2 + γ X3` when the outer ellipse is a circle.
pub fn circular_loci_circumpair(h: &FamilyHandle, gammas: &[f64]) -> Result<Vec<CircleLocus>> {
    require_circle(h)?;
    let (r, s, prod) = (h.p, h.f + h.g, (h.f * h.g).norm());
    Ok(gammas
        .iter()
        .map(|&gamma| {
            let alpha = 1.0 - gamma;
            CircleLocus {
                gamma,
                center: PlanePoint::from_complex(alpha * r * s / 3.0),
                radius: alpha.abs() * r * prod / 3.0,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcutenessProfile {
    pub has_obtuse: bool,
    pub x3_outside_caustic: bool,
}

pub const ACUTENESS_SAMPLES: usize = 512;

pub fn acuteness_profile(h: &FamilyHandle) -> Result<AcutenessProfile> {
    require_circle(h)?;
    let limit = -(1e-9f64).sin();
    let mut has_obtuse = false;
    for s in sample_family(h, ACUTENESS_SAMPLES)? {
        if s.triangle().cosines()?.iter().any(|&c| c < limit) {
            has_obtuse = true;
            break;
        }
    }
    let x3_outside_caustic = h.pair.inner.implicit(h.pair.outer.center) > 0.0;
    Ok(AcutenessProfile { has_obtuse, x3_outside_caustic })
}

/// Printed closed forms for a concentric pair, in the shear frame where
/// the inner ellipse is axis-aligned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prop3Prediction {
    pub frame: ShearFrame,
    /// Circumcenter locus `A x^2 + C y^2 + F = 0` in the shear frame.
    pub ellipse3: ConicCoeffs,
    pub a5: f64,
    pub b5: f64,
}

impl Prop3Prediction {
    /// `ellipse3` rotated into the pair's frame by the inner tilt.
    pub fn ellipse3_world(&self, inner_theta: f64) -> ConicCoeffs {
        let [a, _, c, _, _, f] = self.ellipse3.0;
        let (s, co) = inner_theta.sin_cos();
        ConicCoeffs::normalized([a * co * co + c * s * s, 2.0 * (a - c) * co * s, a * s * s + c * co * co, 0.0, 0.0, f])
    }
}

pub fn prop3_predicted(h: &FamilyHandle) -> Result<Prop3Prediction> {
    if !h.pair.is_concentric() {
        return Err(Error::InvalidArgument("pair is not concentric".into()));
    }
    let frame = ShearFrame::of(&h.pair);
    let ShearFrame { a, b, ac, bc, .. } = frame;
    let (ac2, bc2, b2) = (ac * ac, bc * bc, b * b);
    let k = bc2 * ((ac2 - bc2 + b2).powi(2) * a * a - 4.0 * ac2 * b2 * (ac - bc).powi(2));
    let ellipse3 = ConicCoeffs::normalized([4.0 * b2 * ac2 * ac2, 0.0, 4.0 * b2 * ac2 * bc2, 0.0, 0.0, -k]);
    let r2 = std::f64::consts::SQRT_2;
    let a5 =
        r2 * (a * ac2 * bc + a * b2 * bc - a * bc2 * bc - 2.0 * ac2 * ac * b - 2.0 * ac * b * bc2) / (8.0 * ac2 * b);
    let b5 = r2 * (a * ac2 - 4.0 * ac * b * bc + a * (b2 - bc2)) / (8.0 * b * ac);
    Ok(Prop3Prediction { frame, ellipse3, a5, b5 })
}

/// Circumcenter-locus semi-axes `(x, y)` over the homothetic family.
pub fn homothetic_x3_axes(a: f64, b: f64) -> (f64, f64) {
    let c2 = (a - b) * (a + b);
    (c2 / (4.0 * a), c2 / (4.0 * b))
}

/// Circumcenter-locus semi-axes `(x, y)` over the confocal family.
pub fn confocal_x3_axes(a: f64, b: f64) -> (f64, f64) {
    let delta = confocal_delta(a, b);
    ((a * a - delta) / (2.0 * a), (delta - b * b) / (2.0 * b))
}

/// Nine-point-center-locus semi-axes `(x, y)` over the confocal family.
pub fn confocal_x5_axes(a: f64, b: f64) -> (f64, f64) {
    let delta = confocal_delta(a, b);
    let w1 = |u: f64, v: f64| 4.0 * u * (u * u - v * v);
    let w2 = |u: f64, v: f64| u * u * (u * u + 3.0 * v * v);
    let w3 = |u: f64, v: f64| 3.0 * u * u + v * v;
    ((-w2(a, b) + w3(a, b) * delta) / w1(a, b), (w2(b, a) - w3(b, a) * delta) / w1(b, a))
}

/// Nine-point-center-locus semi-axes `(x, y)` over a concentric,
/// axis-aligned pair with inner x semi-axis `ac`.
pub fn axis_aligned_x5_axes(a: f64, b: f64, ac: f64) -> (f64, f64) {
    let (a2, b2) = (a * a, b * b);
    let x = (a * a2 - 3.0 * a2 * ac + a * b2 - ac * b2).abs() / (4.0 * a2);
    let y = (a2 * ac - 2.0 * a * b2 + 3.0 * ac * b2).abs() / (4.0 * a * b);
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::generic_pair;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lemma_examples() {
        let unit = lemma_ellipse(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let e = unit.ellipse().unwrap();
        assert!((e.a - 1.0).abs() < 1e-15 && (e.b - 1.0).abs() < 1e-15);
        let e = *lemma_ellipse(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)).ellipse().unwrap();
        assert_eq!((e.center.x, e.center.y, e.a, e.b, e.theta), (0.0, 1.0, 3.0, 1.0, 0.0));
        match lemma_ellipse(c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)) {
            LemmaLocus::Segment { half_length, theta, .. } => {
                assert!((half_length - 2.0).abs() < 1e-15);
                assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn circumcircle_reduction() {
        let (f, g) = (c(0.3, 0.0), c(0.1, 0.2));
        let h = generic_pair(1.0, 1.0, f, g).unwrap();
        let pl = predicted_locus(&h, c(1.0, 0.0), c(0.0, 0.0));
        let e = pl.shape.ellipse().unwrap();
        assert!((e.center.x - 0.1333333).abs() < 1e-7 && (e.center.y - 0.0666667).abs() < 1e-7);
        assert!((e.a - 0.0223607).abs() < 1e-7 && (e.b - 0.0223607).abs() < 1e-7);
        assert!((pl.w - (f + g) / 3.0).norm() < 1e-15);
    }

    #[test]
    fn concentric_x2_is_centered() {
        let h = generic_pair(1.5, 1.0, c(0.4, 0.1), c(-0.4, -0.1)).unwrap();
        let pl = predicted_locus(&h, c(1.0, 0.0), c(0.0, 0.0));
        assert!(pl.w.norm() < 1e-15);
    }

    #[test]
    fn circular_loci_examples() {
        let h = generic_pair(1.0, 1.0, c(0.3, 0.0), c(0.1, 0.2)).unwrap();
        let loci = circular_loci_circumpair(&h, &[-0.5, 4.0]).unwrap();
        assert!(loci[0].center.dist(PlanePoint::new(0.2, 0.1)) < 1e-15);
        assert!((loci[0].radius - 0.0335410).abs() < 1e-7);
        assert!(loci[1].center.dist(PlanePoint::new(-0.4, -0.2)) < 1e-15);
        assert!((loci[1].radius - 0.0670820).abs() < 1e-7);
        let zero = generic_pair(1.0, 1.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        for l in circular_loci_circumpair(&zero, &[0.0, -2.0, -0.5, 4.0]).unwrap() {
            assert!(l.center.norm() == 0.0 && l.radius == 0.0);
        }
        let ell = generic_pair(1.5, 1.0, c(0.3, 0.0), c(0.1, 0.2)).unwrap();
        assert!(circular_loci_circumpair(&ell, &[0.0]).is_err());
    }

    #[test]
    fn acuteness_examples() {
        let inside = generic_pair(1.0, 1.0, c(0.1, 0.0), c(-0.05, 0.0)).unwrap();
        assert_eq!(
            acuteness_profile(&inside).unwrap(),
            AcutenessProfile { has_obtuse: false, x3_outside_caustic: false }
        );
        let outside = generic_pair(1.0, 1.0, c(0.6, 0.0), c(0.5, 0.2)).unwrap();
        assert_eq!(
            acuteness_profile(&outside).unwrap(),
            AcutenessProfile { has_obtuse: true, x3_outside_caustic: true }
        );
        let eq = generic_pair(1.0, 1.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(acuteness_profile(&eq).unwrap(), AcutenessProfile { has_obtuse: false, x3_outside_caustic: false });
    }

    #[test]
    fn printed_axes() {
        assert_eq!(homothetic_x3_axes(2.0, 1.0), (0.375, 0.75));
        let (x, y) = confocal_x3_axes(2.0, 1.0);
        assert!(x > 0.0 && y > x);
    }
}
