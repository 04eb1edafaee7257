use serde::{Deserialize, Serialize};

use super::{center_x, Triangle};
use crate::error::{Error, Result};
use crate::geom::PlanePoint;

/// Classical triangles derived from a reference triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivedKind {
    Medial,
    Excentral,
    Extouch,
    Intouch,
    Orthic,
    Anticomplementary,
    EulerTriangle,
    Tangential,
}

impl DerivedKind {
    pub const ALL: [DerivedKind; 8] = [
        DerivedKind::Medial,
        DerivedKind::Excentral,
        DerivedKind::Extouch,
        DerivedKind::Intouch,
        DerivedKind::Orthic,
        DerivedKind::Anticomplementary,
        DerivedKind::EulerTriangle,
        DerivedKind::Tangential,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DerivedKind::Medial => "medial",
            DerivedKind::Excentral => "excentral",
            DerivedKind::Extouch => "extouch",
            DerivedKind::Intouch => "intouch",
            DerivedKind::Orthic => "orthic",
            DerivedKind::Anticomplementary => "anticomplementary",
            DerivedKind::EulerTriangle => "euler_triangle",
            DerivedKind::Tangential => "tangential",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Rotates `(w_i, w_j, w_k)` given in the frame of vertex `i` back to
/// `(w_1, w_2, w_3)`.
fn cyclic(i: usize, w: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (offset, value) in w.into_iter().enumerate() {
        out[(i + offset) % 3] = value;
    }
    out
}

fn foot(from: PlanePoint, a: PlanePoint, b: PlanePoint) -> PlanePoint {
    let d = b - a;
    a + ((from - a).dot(d) / d.norm_sqr()) * d
}

pub fn derived_triangle(t: &Triangle, kind: DerivedKind) -> Result<Triangle> {
    let s = t.sidelengths()?;
    let [p1, p2, p3] = t.vertices;
    let semi = 0.5 * (s[0] + s[1] + s[2]);
    let vertex = |i: usize, w: [f64; 3]| t.barycentric_point(cyclic(i, w));
    let by_vertex =
        |f: &dyn Fn(usize) -> Result<PlanePoint>| -> Result<Triangle> { Ok(Triangle::new(f(0)?, f(1)?, f(2)?)) };
    match kind {
        DerivedKind::Medial => Ok(Triangle::new(p2.midpoint(p3), p3.midpoint(p1), p1.midpoint(p2))),
        DerivedKind::Anticomplementary => Ok(Triangle::new(p2 + p3 - p1, p3 + p1 - p2, p1 + p2 - p3)),
        DerivedKind::Excentral => by_vertex(&|i| vertex(i, [-s[i], s[(i + 1) % 3], s[(i + 2) % 3]])),
        // Excircle touch point on side i: (0 : s - s_j : s - s_k).
        DerivedKind::Extouch => by_vertex(&|i| vertex(i, [0.0, semi - s[(i + 1) % 3], semi - s[(i + 2) % 3]])),
        // Incircle touch point on side i: (0 : s - s_k : s - s_j).
        DerivedKind::Intouch => by_vertex(&|i| vertex(i, [0.0, semi - s[(i + 2) % 3], semi - s[(i + 1) % 3]])),
        DerivedKind::Orthic => {
            if t.is_right()? {
                return Err(Error::RightTriangle);
            }
            Ok(Triangle::new(foot(p1, p2, p3), foot(p2, p3, p1), foot(p3, p1, p2)))
        }
        DerivedKind::EulerTriangle => {
            let h = center_x(t, 4)?;
            Ok(Triangle::new(h.midpoint(p1), h.midpoint(p2), h.midpoint(p3)))
        }
        DerivedKind::Tangential => {
            if t.is_right()? {
                return Err(Error::RightTriangle);
            }
            by_vertex(&|i| {
                let sq = |k: usize| s[k % 3] * s[k % 3];
                vertex(i, [-sq(i), sq(i + 1), sq(i + 2)])
            })
        }
    }
}
