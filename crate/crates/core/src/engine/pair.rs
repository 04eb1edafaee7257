use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blaschke::blaschke_caustic;
use super::closure::closure_check;
use crate::error::{Error, Result};
use crate::geom::{EllipseSpec, PlanePoint};

/// Tolerance for admissibility verdicts (closure residual, axis identity).
pub const ADMISSIBLE_TOL: f64 = 1e-9;
const CONCENTRIC_TOL: f64 = 1e-12;
const NESTING_SAMPLES: usize = 64;

/// Outer ellipse centered at the origin with its major axis along x, and a
/// strictly nested inner ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub outer: EllipseSpec,
    pub inner: EllipseSpec,
}

impl PairSpec {
    pub fn new(outer: EllipseSpec, inner: EllipseSpec) -> Result<Self> {
        if outer.center.norm() > CONCENTRIC_TOL || outer.theta != 0.0 {
            return Err(Error::InvalidArgument(
                "outer ellipse must be centered at the origin with its major axis along x".into(),
            ));
        }
        let nested = inner
            .sample(NESTING_SAMPLES)
            .into_iter()
            .chain(std::iter::once(inner.center))
            .all(|p| outer.implicit(p) < 0.0);
        if !nested {
            return Err(Error::InvalidArgument("inner ellipse is not strictly nested".into()));
        }
        Ok(Self { outer, inner })
    }

    pub fn is_concentric(&self) -> bool {
        self.inner.center.norm() < CONCENTRIC_TOL
    }
}

/// `delta = sqrt(a^4 - a^2 b^2 + b^4)`, recurring in the confocal family.
pub fn confocal_delta(a: f64, b: f64) -> f64 {
    (a.powi(4) - a * a * b * b + b.powi(4)).sqrt()
}

/// Concentric, axis-aligned families plus the general concentric tilted pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NamedFamily {
    /// Outer `(a, b)`, inner circle of radius `ab/(a+b)`.
    Incircle { a: f64, b: f64 },
    /// Outer circle of radius `r`, inner `(ac, r - ac)`.
    Circumcircle { r: f64, ac: f64 },
    /// Outer `(a, b)`, inner `(a/2, b/2)`.
    Homothetic { a: f64, b: f64 },
    /// Elliptic billiard `(a, b)` with its confocal caustic.
    Confocal { a: f64, b: f64 },
    /// Excentral triangles of the billiard `(a, b)`; `(a, b)` is the caustic.
    Excentral { a: f64, b: f64 },
    /// Concentric pair with inner `(ac, bc)` tilted so the pair admits 3-periodics.
    ConcentricTilted { a: f64, b: f64, ac: f64, bc: f64 },
}

impl NamedFamily {
    pub const NAMES: [&'static str; 6] =
        ["incircle", "circumcircle", "homothetic", "confocal", "excentral", "concentric_tilted"];

    pub fn name(&self) -> &'static str {
        match self {
            NamedFamily::Incircle { .. } => "incircle",
            NamedFamily::Circumcircle { .. } => "circumcircle",
            NamedFamily::Homothetic { .. } => "homothetic",
            NamedFamily::Confocal { .. } => "confocal",
            NamedFamily::Excentral { .. } => "excentral",
            NamedFamily::ConcentricTilted { .. } => "concentric_tilted",
        }
    }

    /// Outer and inner ellipses of the family.
    pub fn ellipses(&self) -> Result<(EllipseSpec, EllipseSpec)> {
        let infeasible = |msg: &str| Err(Error::InfeasibleParams(msg.to_string()));
        let positive = |xs: &[f64]| xs.iter().all(|x| x.is_finite() && *x > 0.0);
        let axis = |a: f64, b: f64| EllipseSpec::axis_aligned(a, b);
        match *self {
            NamedFamily::Incircle { a, b }
            | NamedFamily::Homothetic { a, b }
            | NamedFamily::Confocal { a, b }
            | NamedFamily::Excentral { a, b }
                if !(positive(&[a, b]) && a >= b) =>
            {
                infeasible("need a >= b > 0")
            }
            NamedFamily::Incircle { a, b } => Ok((axis(a, b), axis(a * b / (a + b), a * b / (a + b)))),
            NamedFamily::Homothetic { a, b } => Ok((axis(a, b), axis(0.5 * a, 0.5 * b))),
            NamedFamily::Circumcircle { r, ac } => {
                let bc = r - ac;
                if !(positive(&[r, ac, bc]) && ac >= bc) {
                    return infeasible("need r > ac >= r/2");
                }
                Ok((axis(r, r), axis(ac, bc)))
            }
            NamedFamily::Confocal { a, b } => {
                let c2 = (a - b) * (a + b);
                if c2 <= 0.0 {
                    return infeasible("confocal pair needs a > b");
                }
                let delta = confocal_delta(a, b);
                let (ac, bc) = (a * (delta - b * b) / c2, b * (a * a - delta) / c2);
                if !positive(&[ac, bc]) {
                    return infeasible("confocal caustic axes are not positive");
                }
                Ok((axis(a, b), axis(ac, bc)))
            }
            NamedFamily::Excentral { a, b } => {
                // The excenters trace an ellipse whose major axis is
                // perpendicular to the billiard's; rotate so the outer one lies along x.
                let delta = confocal_delta(a, b);
                let inner = EllipseSpec::new(PlanePoint::ORIGIN, a, b, std::f64::consts::FRAC_PI_2);
                Ok((axis((a * a + delta) / b, (b * b + delta) / a), inner))
            }
            NamedFamily::ConcentricTilted { a, b, ac, bc } => {
                if !(positive(&[a, b, ac, bc]) && a >= b && ac >= bc) {
                    return infeasible("need a >= b > 0 and ac >= bc > 0");
                }
                let theta = concentric_tilt(a, b, ac, bc)?;
                Ok((axis(a, b), EllipseSpec::new(PlanePoint::ORIGIN, ac, bc, theta)))
            }
        }
    }

    pub fn build(&self) -> Result<FamilyHandle> {
        let (outer, inner) = self.ellipses()?;
        let pair = PairSpec::new(outer, inner).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::InfeasibleParams(msg),
            other => other,
        })?;
        FamilyHandle::from_pair(pair)
    }
}

/// Tilt of the inner ellipse solving the concentric Cayley condition
/// `a^2 b^2 + cos^2(t) c^2 cc^2 - (a ac + b bc)^2 = 0`.
pub fn concentric_tilt(a: f64, b: f64, ac: f64, bc: f64) -> Result<f64> {
    let c2 = (a - b) * (a + b);
    let cc2 = (ac - bc) * (ac + bc);
    let base = (a * ac + b * bc).powi(2) - a * a * b * b;
    let scale = (a * b).powi(2);
    if c2 < CONCENTRIC_TOL || cc2 < CONCENTRIC_TOL {
        // Circle involved: the tilt is immaterial, the relation must hold at t = 0.
        if (base - c2 * cc2).abs() > 1e-10 * scale {
            return Err(Error::InfeasibleParams("Cayley condition fails for the circular pair".into()));
        }
        return Ok(0.0);
    }
    let cos2 = base / (c2 * cc2);
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&cos2) {
        return Err(Error::InfeasibleParams(format!("cos^2(theta) = {cos2} outside [0, 1]")));
    }
    Ok(cos2.clamp(0.0, 1.0).sqrt().acos())
}

/// Concentric pair written in the inner ellipse's axes: the inner ellipse
/// is `x^2/ac^2 + y^2/bc^2 = 1` and the outer one is the sheared ellipse
/// `(b^2 + c^2) x^2 - 2 a c x y + a^2 y^2 = a^2 b^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShearFrame {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub ac: f64,
    pub bc: f64,
}

impl ShearFrame {
    /// Shear-frame parameters of a concentric pair.
    pub fn of(pair: &PairSpec) -> Self {
        let (outer, inner) = (pair.outer, pair.inner);
        // Outer quadratic form x^T M x = 1, seen from the inner axes.
        let phi = outer.theta - inner.theta;
        let (s, c) = phi.sin_cos();
        let (ia2, ib2) = (1.0 / (outer.a * outer.a), 1.0 / (outer.b * outer.b));
        let m12 = (ia2 - ib2) * s * c;
        let m22 = ia2 * s * s + ib2 * c * c;
        let det = ia2 * ib2;
        let b = 1.0 / m22.sqrt();
        let a = (m22 / det).sqrt();
        Self { a, b, c: -m12 * a * b * b, ac: inner.a, bc: inner.b }
    }

    /// `-c^2 ac^2 + (ab + a bc + ac b)(ab - a bc - ac b)`, zero for admissible pairs.
    pub fn cayley(&self) -> f64 {
        let Self { a, b, c, ac, bc } = *self;
        -c * c * ac * ac + (a * b + a * bc + ac * b) * (a * b - a * bc - ac * b)
    }
}

/// An admissible pair together with its circle-normal form: the outer
/// ellipse is the image of the unit circle under `L(z) = p z + q conj(z)`
/// and the caustic there has foci `f`, `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyHandle {
    pub pair: PairSpec,
    pub p: f64,
    pub q: f64,
    pub f: Complex64,
    pub g: Complex64,
}

impl FamilyHandle {
    pub fn a(&self) -> f64 {
        self.p + self.q
    }

    pub fn b(&self) -> f64 {
        self.p - self.q
    }

    /// `L(z) = p z + q conj(z)`.
    pub fn affine(&self, z: Complex64) -> Complex64 {
        self.p * z + self.q * z.conj()
    }

    /// Recovers `(f, g)` from a pair: maps the inner ellipse through
    /// `diag(1/a, 1/b)`, takes its foci ordered by argument and checks the
    /// axis identity `2 a' = |1 - conj(f) g|` and the closure oracle.
    pub fn from_pair(pair: PairSpec) -> Result<Self> {
        let (a, b) = (pair.outer.a, pair.outer.b);
        let image = pair.inner.linear_image(&Matrix2::new(1.0 / a, 0.0, 0.0, 1.0 / b))?;
        let (f1, f2) = image.foci();
        let (mut f, mut g) = (f1.to_complex(), f2.to_complex());
        if g.arg() < f.arg() {
            std::mem::swap(&mut f, &mut g);
        }
        let axis = (Complex64::new(1.0, 0.0) - f.conj() * g).norm();
        let mismatch = (axis - 2.0 * image.a).abs();
        if mismatch > ADMISSIBLE_TOL || f.norm() >= 1.0 || g.norm() >= 1.0 {
            return Err(Error::InadmissiblePair { residual: mismatch });
        }
        let handle = Self { pair, p: 0.5 * (a + b), q: 0.5 * (a - b), f, g };
        handle.verify_closure()?;
        Ok(handle)
    }

    fn verify_closure(&self) -> Result<()> {
        let worst = [0.1, 1.3, 2.9, 4.4]
            .into_iter()
            .map(|seed| match closure_check(&self.pair, seed, ADMISSIBLE_TOL) {
                Ok(c) => c.residual,
                Err(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max);
        if worst < ADMISSIBLE_TOL {
            Ok(())
        } else {
            Err(Error::InadmissiblePair { residual: worst })
        }
    }
}

/// Pair whose outer ellipse is `(a, b)` and whose inner ellipse is the
/// affine image of the Blaschke caustic with foci `f`, `g`.
pub fn generic_pair(a: f64, b: f64, f: Complex64, g: Complex64) -> Result<FamilyHandle> {
    if !(a.is_finite() && b > 0.0 && a >= b) {
        return Err(Error::InvalidArgument("need a >= b > 0".into()));
    }
    let caustic = blaschke_caustic(f, g)?;
    let inner = caustic.linear_image(&Matrix2::new(a, 0.0, 0.0, b))?;
    let pair = PairSpec::new(EllipseSpec::axis_aligned(a, b), inner)?;
    let handle = FamilyHandle { pair, p: 0.5 * (a + b), q: 0.5 * (a - b), f, g };
    handle.verify_closure()?;
    Ok(handle)
}

pub fn build_named_pair(kind: NamedFamily) -> Result<FamilyHandle> {
    kind.build()
}

/// Algebraic Cayley residual for 3-periodics.
///
/// Concentric pairs use `a^2 b^2 + cos^2 t c^2 cc^2 - (a ac + b bc)^2`;
/// otherwise the general quartic in `(xc, yc)` is evaluated. Advisory only:
/// admissibility verdicts come from [`closure_check`].
pub fn cayley_residual(pair: &PairSpec) -> f64 {
    let (a, b) = (pair.outer.a, pair.outer.b);
    let (ac, bc, theta) = (pair.inner.a, pair.inner.b, pair.inner.theta);
    let c2 = a * a - b * b;
    let cc2 = ac * ac - bc * bc;
    let (st, ct) = theta.sin_cos();
    let ct2 = ct * ct;
    if pair.is_concentric() {
        return (a * a * b * b + ct2 * c2 * cc2 - (a * ac + b * bc).powi(2)).abs();
    }
    let (xc, yc) = (pair.inner.center.x, pair.inner.center.y);
    let (a2, b2, bc2) = (a * a, b * b, bc * bc);
    let x2 = xc * xc;
    let y2 = yc * yc;
    let mut r = b2 * b2 * x2 * x2 + 2.0 * a2 * b2 * x2 * y2;
    r += (2.0 * cc2 * (-b2 * (a2 + b2)) * ct2 - 2.0 * (b2 - bc2) * b2 * a2 - 2.0 * b2 * b2 * bc2) * x2;
    r -= 8.0 * a2 * b2 * xc * yc * cc2 * st * ct;
    r += a2 * a2 * y2 * y2;
    r += (2.0 * cc2 * a2 * (a2 + b2) * ct2 - 2.0 * (bc2 + b2) * a2 * a2 + 2.0 * a2 * b2 * bc2) * y2;
    r += cc2 * cc2 * c2 * c2 * ct2 * ct2;
    r -= 2.0 * cc2 * c2 * (a2 * ac * ac - b2 * a2 + bc2 * b2) * ct2;
    r += (a * ac + a * b - b * bc) * (a * ac - a * b - b * bc) * (a * ac + a * b + b * bc) * (a * ac - a * b + b * bc);
    r.abs()
}
