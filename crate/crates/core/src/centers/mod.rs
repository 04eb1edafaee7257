//! Triangle centers, Euler-line combinations, derived triangles and the
//! named circles used by the invariant experiments.
//!
//! Euler-line members are built from `X2` and `X3` so that every
//! `alpha X2 + beta X3` point shares one roundoff path.

mod circles;
mod derived;
mod triangle;

pub use circles::{named_circle, CircleKind};
pub use derived::{derived_triangle, DerivedKind};
pub use triangle::{barycentric_point, sidelengths, Triangle, AREA_TOL, RIGHT_ANGLE_TOL};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PlanePoint;

/// Kimberling indices supported by [`center_x`].
pub const SUPPORTED_CENTERS: [u32; 13] = [1, 2, 3, 4, 5, 6, 9, 10, 20, 26, 40, 381, 1158];

/// Which point of a triangle to track.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterSpec {
    Kimberling(u32),
    EulerCombo { alpha: Complex64, beta: Complex64 },
    EulerGamma(f64),
}

impl CenterSpec {
    /// `(alpha, beta)` when the center is a fixed combination `alpha X2 + beta X3`.
    pub fn alpha_beta(&self) -> Option<(Complex64, Complex64)> {
        let real = |a: f64, b: f64| Some((Complex64::new(a, 0.0), Complex64::new(b, 0.0)));
        match *self {
            CenterSpec::EulerCombo { alpha, beta } => Some((alpha, beta)),
            CenterSpec::EulerGamma(gamma) => real(1.0 - gamma, gamma),
            CenterSpec::Kimberling(k) => euler_gamma(k).and_then(|g| real(1.0 - g, g)),
        }
    }

    pub fn eval(&self, t: &Triangle) -> Result<PlanePoint> {
        match *self {
            CenterSpec::Kimberling(k) => center_x(t, k),
            CenterSpec::EulerCombo { alpha, beta } => euler_combo_point(t, alpha, beta),
            CenterSpec::EulerGamma(gamma) => {
                euler_combo_point(t, Complex64::new(1.0 - gamma, 0.0), Complex64::new(gamma, 0.0))
            }
        }
    }

    /// Parses `X5`, `5`, `gamma:-0.5` or `combo:ar,ai,br,bi`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(g) = s.strip_prefix("gamma:") {
            return g.parse().ok().map(CenterSpec::EulerGamma);
        }
        if let Some(rest) = s.strip_prefix("combo:") {
            let v: Vec<f64> = rest.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<_, _>>().ok()?;
            if v.len() != 4 {
                return None;
            }
            return Some(CenterSpec::EulerCombo {
                alpha: Complex64::new(v[0], v[1]),
                beta: Complex64::new(v[2], v[3]),
            });
        }
        let k: u32 = s.trim_start_matches(['X', 'x']).parse().ok()?;
        SUPPORTED_CENTERS.contains(&k).then_some(CenterSpec::Kimberling(k))
    }

    pub fn label(&self) -> String {
        match self {
            CenterSpec::Kimberling(k) => format!("X{k}"),
            CenterSpec::EulerGamma(g) => format!("gamma:{g}"),
            CenterSpec::EulerCombo { alpha, beta } => {
                format!("combo:{},{},{},{}", alpha.re, alpha.im, beta.re, beta.im)
            }
        }
    }
}

/// `gamma` with `X_k = (1 - gamma) X2 + gamma X3`, for the Euler-line
/// centers that are fixed affine combinations.
pub fn euler_gamma(k: u32) -> Option<f64> {
    match k {
        2 => Some(0.0),
        3 => Some(1.0),
        4 => Some(-2.0),
        5 => Some(-0.5),
        20 => Some(4.0),
        381 => Some(-1.0),
        _ => None,
    }
}

/// `alpha X2 + beta X3` with complex coefficients acting on the complex view.
pub fn euler_combo_point(t: &Triangle, alpha: Complex64, beta: Complex64) -> Result<PlanePoint> {
    let x2 = t.centroid().to_complex();
    let x3 = t.circumcenter()?.to_complex();
    Ok(PlanePoint::from_complex(alpha * x2 + beta * x3))
}

fn combo(t: &Triangle, gamma: f64) -> Result<PlanePoint> {
    t.sidelengths()?;
    let x2 = t.centroid();
    let x3 = t.circumcenter()?;
    Ok((1.0 - gamma) * x2 + gamma * x3)
}

/// Kimberling center `X_k` of `t`.
pub fn center_x(t: &Triangle, k: u32) -> Result<PlanePoint> {
    let s = t.sidelengths()?;
    match k {
        1 => t.barycentric_point(s),
        2 => Ok(t.centroid()),
        3 => t.circumcenter(),
        4 | 5 | 20 | 381 => combo(t, euler_gamma(k).unwrap_or_default()),
        6 => t.barycentric_point(s.map(|x| x * x)),
        9 => {
            t.barycentric_point([s[0] * (s[1] + s[2] - s[0]), s[1] * (s[2] + s[0] - s[1]), s[2] * (s[0] + s[1] - s[2])])
        }
        10 => center_x(&derived_triangle(t, DerivedKind::Medial)?, 1),
        26 => match derived_triangle(t, DerivedKind::Tangential) {
            Ok(tan) => tan.circumcenter(),
            Err(Error::RightTriangle) => Err(Error::TangentialUndefined),
            Err(e) => Err(e),
        },
        40 => derived_triangle(t, DerivedKind::Excentral)?.circumcenter(),
        1158 => derived_triangle(t, DerivedKind::Extouch)?.circumcenter(),
        _ => Err(Error::InvalidArgument(format!("unsupported center X{k}"))),
    }
}
