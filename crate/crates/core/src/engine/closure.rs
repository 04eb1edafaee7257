use serde::{Deserialize, Serialize};

use super::pair::PairSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureCheck {
    pub closed: bool,
    pub residual: f64,
}

/// Runs the tangent-chord map three times from `point_at(outer, seed)`,
/// always taking the counter-clockwise tangent, and measures how far the
/// orbit lands from its start.
pub fn closure_check(pair: &PairSpec, seed: f64, tol: f64) -> Result<ClosureCheck> {
    let start = pair.outer.point_at(seed);
    let mut p = start;
    for _ in 0..3 {
        let (touch, _) = pair.inner.tangents_from(p).map_err(|_| Error::TangentFailure)?;
        p = pair.outer.chord_end(p, touch);
        if !p.is_finite() {
            return Err(Error::TangentFailure);
        }
    }
    let residual = p.dist(start);
    Ok(ClosureCheck { closed: residual < tol, residual })
}
