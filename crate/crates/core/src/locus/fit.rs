use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConicClass, ConicCoeffs, EllipseSpec, PlanePoint};

/// Point clouds narrower than this are treated as a stationary point.
pub const STATIONARY_DIAMETER: f64 = 1e-9;
/// Ratio of the second-smallest to largest singular value below which the
/// design matrix is considered rank deficient.
const RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicFit {
    pub coeffs: ConicCoeffs,
    pub class: ConicClass,
    /// RMS algebraic residual of the unit-norm coefficients over the input.
    pub rms_residual: f64,
}

impl ConicFit {
    pub fn ellipse(&self) -> Option<&EllipseSpec> {
        self.class.ellipse()
    }
}

/// Algebraic least-squares conic through the points: the right singular
/// vector of the smallest singular value of the `[x^2, xy, y^2, x, y, 1]`
/// design matrix, computed on centered and scaled coordinates.
pub fn fit_conic(points: &[PlanePoint]) -> Result<ConicFit> {
    if points.len() < 6 {
        return Err(Error::RankDeficient);
    }
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
    let (mx, my) = (mx / n, my / n);
    let mean_dist = points.iter().map(|p| (p.x - mx).hypot(p.y - my)).sum::<f64>() / n;
    if mean_dist == 0.0 || !mean_dist.is_finite() {
        return Err(Error::RankDeficient);
    }
    let s = std::f64::consts::SQRT_2 / mean_dist;
    let design = DMatrix::from_fn(points.len(), 6, |i, j| {
        let (x, y) = (s * (points[i].x - mx), s * (points[i].y - my));
        [x * x, x * y, y * y, x, y, 1.0][j]
    });
    let svd = design.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::RankDeficient)?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    if order.len() < 6 || svd.singular_values[order[4]] <= RANK_TOL * svd.singular_values[order[0]] {
        return Err(Error::RankDeficient);
    }
    let row = v_t.row(order[5]);
    let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(|j| row[j]);
    // Undo x' = s (x - mx), y' = s (y - my).
    let s2 = s * s;
    let raw = [
        a * s2,
        b * s2,
        c * s2,
        -2.0 * a * s2 * mx - b * s2 * my + d * s,
        -b * s2 * mx - 2.0 * c * s2 * my + e * s,
        s2 * (a * mx * mx + b * mx * my + c * my * my) - s * (d * mx + e * my) + f,
    ];
    let coeffs = ConicCoeffs::normalized(raw);
    let rms_residual = (points.iter().map(|&p| coeffs.eval(p).powi(2)).sum::<f64>() / n).sqrt();
    Ok(ConicFit { coeffs, class: coeffs.classify()?, rms_residual })
}

pub fn diameter(points: &[PlanePoint]) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.dist(*q));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LocusShape {
    Stationary { point: PlanePoint, diameter: f64 },
    Conic(ConicFit),
}

/// Detects stationary loci before fitting.
pub fn classify_locus(points: &[PlanePoint]) -> Result<LocusShape> {
    let d = diameter(points);
    if !points.is_empty() && d < STATIONARY_DIAMETER {
        let n = points.len() as f64;
        let point = points.iter().fold(PlanePoint::ORIGIN, |acc, &p| acc + p);
        return Ok(LocusShape::Stationary { point: (1.0 / n) * point, diameter: d });
    }
    fit_conic(points).map(LocusShape::Conic)
}
