use serde::{Deserialize, Serialize};

use super::{center_x, Triangle};
use crate::error::Result;
use crate::geom::SignedCircle;

/// Named circles of a triangle. The first six share the radical axis of
/// the circumcircle and the Euler circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleKind {
    Circumcircle,
    Euler,
    SteinerOrthoptic,
    Orthocentroidal,
    Polar,
    Tangential,
    Anticomplementary,
    Bevan,
    Spieker,
    Mandart,
    Incircle,
}

impl CircleKind {
    pub const ALL: [CircleKind; 11] = [
        CircleKind::Circumcircle,
        CircleKind::Euler,
        CircleKind::SteinerOrthoptic,
        CircleKind::Orthocentroidal,
        CircleKind::Polar,
        CircleKind::Tangential,
        CircleKind::Anticomplementary,
        CircleKind::Bevan,
        CircleKind::Spieker,
        CircleKind::Mandart,
        CircleKind::Incircle,
    ];

    pub const COAXIAL: [CircleKind; 6] = [
        CircleKind::Circumcircle,
        CircleKind::Euler,
        CircleKind::SteinerOrthoptic,
        CircleKind::Orthocentroidal,
        CircleKind::Polar,
        CircleKind::Tangential,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CircleKind::Circumcircle => "circumcircle",
            CircleKind::Euler => "euler",
            CircleKind::SteinerOrthoptic => "steiner_orthoptic",
            CircleKind::Orthocentroidal => "orthocentroidal",
            CircleKind::Polar => "polar",
            CircleKind::Tangential => "tangential",
            CircleKind::Anticomplementary => "anticomplementary",
            CircleKind::Bevan => "bevan",
            CircleKind::Spieker => "spieker",
            CircleKind::Mandart => "mandart",
            CircleKind::Incircle => "incircle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Kimberling index of the circle's center.
    pub fn center_index(&self) -> u32 {
        match self {
            CircleKind::Circumcircle => 3,
            CircleKind::Euler => 5,
            CircleKind::SteinerOrthoptic => 2,
            CircleKind::Orthocentroidal => 381,
            CircleKind::Polar | CircleKind::Anticomplementary => 4,
            CircleKind::Tangential => 26,
            CircleKind::Bevan => 40,
            CircleKind::Spieker => 10,
            CircleKind::Mandart => 1158,
            CircleKind::Incircle => 1,
        }
    }
}

pub fn named_circle(t: &Triangle, kind: CircleKind) -> Result<SignedCircle> {
    let s = t.sidelengths()?;
    let r_circ = t.circumradius()?;
    let rr = r_circ * r_circ;
    let sum_sq: f64 = s.iter().map(|x| x * x).sum();
    let center = center_x(t, kind.center_index())?;
    let r2 = match kind {
        CircleKind::Circumcircle => rr,
        CircleKind::Euler => rr / 4.0,
        CircleKind::SteinerOrthoptic => sum_sq / 18.0,
        CircleKind::Orthocentroidal => rr - sum_sq / 9.0,
        CircleKind::Polar => 4.0 * rr - sum_sq / 2.0,
        CircleKind::Tangential => {
            let prod: f64 = t.cosines()?.iter().product();
            rr / (16.0 * prod * prod)
        }
        CircleKind::Anticomplementary | CircleKind::Bevan => 4.0 * rr,
        CircleKind::Spieker => {
            let r = t.inradius()?;
            r * r / 4.0
        }
        CircleKind::Mandart => {
            let semi = 0.5 * (s[0] + s[1] + s[2]);
            let k = semi / (s[0] * s[1] * s[2]);
            let prod = (4.0 * rr - s[1] * s[2]) * (4.0 * rr - s[2] * s[0]) * (4.0 * rr - s[0] * s[1]);
            k * k * prod
        }
        CircleKind::Incircle => {
            let r = t.inradius()?;
            r * r
        }
    };
    Ok(SignedCircle::new(center, r2))
}
