use serde::{Deserialize, Serialize};

use crate::centers::{named_circle, CircleKind};
use crate::engine::{sample_family, FamilyHandle};
use crate::error::Result;
use crate::geom::{PlanePoint, SignedCircle};
use crate::invariant::{InvarianceReport, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PencilMember {
    pub t: f64,
    pub circle: SignedCircle,
}

/// Member of the coaxial pencil through `c1` (t = 0) and `c2` (t = 1):
/// the coefficient vectors `(D, E, F)` are combined affinely.
pub fn pencil_member(c1: &SignedCircle, c2: &SignedCircle, t: f64) -> SignedCircle {
    let (k1, k2) = (c1.coeffs(), c2.coeffs());
    SignedCircle::from_coeffs([0, 1, 2].map(|i| (1.0 - t) * k1[i] + t * k2[i]))
}

/// Relspread of the center's power against the pencil member at each `t`,
/// the pencil being spanned by the circumcircle and the Euler circle.
pub fn pencil_invariance_scan(h: &FamilyHandle, ts: &[f64], opts: &VerifyOptions) -> Result<Vec<InvarianceReport>> {
    let base = h.pair.outer.center;
    let mut pairs = Vec::with_capacity(opts.samples);
    for s in sample_family(h, opts.samples)? {
        let t = s.triangle();
        pairs.push((named_circle(&t, CircleKind::Circumcircle)?, named_circle(&t, CircleKind::Euler)?));
    }
    Ok(ts
        .iter()
        .map(|&t| {
            let values: Vec<f64> = pairs.iter().map(|(c1, c2)| pencil_member(c1, c2, t).power(base)).collect();
            InvarianceReport::from_values(format!("pencil:t={t}"), opts.samples, &values, opts)
        })
        .collect())
}

/// Power of `p` against a pencil member, as the same combination of the
/// powers against the generators.
pub fn pencil_power(p: PlanePoint, c1: &SignedCircle, c2: &SignedCircle, t: f64) -> f64 {
    (1.0 - t) * c1.power(p) + t * c2.power(p)
}
