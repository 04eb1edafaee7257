use serde::{Deserialize, Serialize};

use super::nelder_mead::{nelder_mead, SimplexOptions};
use crate::centers::{named_circle, CircleKind};
use crate::engine::{sample_family, FamilyHandle};
use crate::error::{Error, Result};
use crate::geom::{PlanePoint, SignedCircle};
use crate::invariant::spread_stats;

pub const DEFAULT_GRID: usize = 64;
pub const SEARCH_SAMPLES: usize = 128;
const FLAT_TOL: f64 = 1e-12;
const MAX_RESTARTS: usize = 8;

/// Relspread of the power over a regular grid, row-major in `y` then `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceField {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl VarianceField {
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.xs.len() + ix]
    }

    /// CSV with header `x,y,relspread`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,relspread\n");
        for (iy, y) in self.ys.iter().enumerate() {
            for (ix, x) in self.xs.iter().enumerate() {
                out.push_str(&format!("{x:.17e},{y:.17e},{:.17e}\n", self.at(ix, iy)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryPointResult {
    pub kind: CircleKind,
    pub point: PlanePoint,
    pub relspread_at_point: f64,
    pub relspread_at_origin: f64,
    /// Best objective value after each refinement iteration.
    pub history: Vec<f64>,
    pub grid: VarianceField,
}

/// Family circles sampled once; the objective is then a cheap function of the point.
#[derive(Debug, Clone)]
pub struct PowerField {
    circles: Vec<SignedCircle>,
}

impl PowerField {
    pub fn new(h: &FamilyHandle, kind: CircleKind, n: usize) -> Result<Self> {
        let circles =
            sample_family(h, n)?.iter().map(|s| named_circle(&s.triangle(), kind)).collect::<Result<Vec<_>>>()?;
        Ok(Self { circles })
    }

    pub fn circles(&self) -> &[SignedCircle] {
        &self.circles
    }

    pub fn relspread(&self, p: PlanePoint) -> f64 {
        let values: Vec<f64> = self.circles.iter().map(|c| c.power(p)).collect();
        spread_stats(&values).1
    }

    /// Power at `p` equal over the family up to roundoff. Judged on the
    /// absolute spread so points where the mean power vanishes count too.
    pub fn is_flat_at(&self, p: PlanePoint) -> bool {
        let values: Vec<f64> = self.circles.iter().map(|c| c.power(p)).collect();
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
        let (mean, _) = spread_stats(&values);
        hi - lo < FLAT_TOL * mean.abs().max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub grid: usize,
    pub refine: bool,
    pub samples: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, refine: true, samples: SEARCH_SAMPLES }
    }
}

/// Point whose power against the chosen circle varies least over the
/// family: grid search over the outer ellipse's bounding box followed by
/// restarted Nelder–Mead.
pub fn stationary_power_point(
    h: &FamilyHandle,
    kind: CircleKind,
    opts: &SearchOptions,
) -> Result<StationaryPointResult> {
    if opts.grid < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 nodes per side".into()));
    }
    let field = PowerField::new(h, kind, opts.samples)?;
    let outer = h.pair.outer;
    let (hx, hy) = outer.half_extents();
    let axis = |c: f64, half: f64| -> Vec<f64> {
        (0..opts.grid).map(|i| c - half + 2.0 * half * i as f64 / (opts.grid - 1) as f64).collect()
    };
    let xs = axis(outer.center.x, hx);
    let ys = axis(outer.center.y, hy);
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    let mut flat = true;
    for &y in &ys {
        for &x in &xs {
            let p = PlanePoint::new(x, y);
            values.push(field.relspread(p));
            flat = flat && field.is_flat_at(p);
        }
    }
    if flat {
        return Err(Error::NoMinimum);
    }
    let grid = VarianceField { xs, ys, values };
    let best = (0..grid.values.len()).min_by(|&i, &j| grid.values[i].total_cmp(&grid.values[j])).unwrap_or(0);
    let mut point = PlanePoint::new(grid.xs[best % grid.xs.len()], grid.ys[best / grid.xs.len()]);
    let mut value = grid.values[best];
    let mut history = vec![value];
    if opts.refine {
        let mut step = 0.01 * outer.a;
        for _ in 0..MAX_RESTARTS {
            let simplex = SimplexOptions { step, diameter_tol: 1e-10, max_iter: 4000 };
            let run = nelder_mead(|p| field.relspread(p), point, simplex);
            let improved = run.value < value;
            history.extend(run.history.iter().map(|v| v.min(value)));
            if improved {
                point = run.point;
                value = run.value;
            }
            if !improved || value < 1e-14 {
                break;
            }
            step = (step * 0.1).max(1e-9);
        }
    }
    let origin = PlanePoint::ORIGIN;
    let relspread_at_origin = field.relspread(origin);
    if relspread_at_origin < value {
        point = origin;
        value = relspread_at_origin;
        history.push(value);
    }
    Ok(StationaryPointResult { kind, point, relspread_at_point: value, relspread_at_origin, history, grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_named_pair, generic_pair, NamedFamily};
    use num_complex::Complex64;

    #[test]
    fn flat_field_has_no_minimum() {
        let h = generic_pair(1.0, 1.0, Complex64::new(0.3, 0.0), Complex64::new(0.1, 0.2)).unwrap();
        let opts = SearchOptions { grid: 8, ..Default::default() };
        assert_eq!(stationary_power_point(&h, CircleKind::Circumcircle, &opts), Err(Error::NoMinimum));
    }

    #[test]
    fn concentric_pair_gives_center() {
        let h = build_named_pair(NamedFamily::ConcentricTilted { a: 1.5, b: 1.0, ac: 0.8, bc: 0.4 }).unwrap();
        let opts = SearchOptions { grid: 16, ..Default::default() };
        let r = stationary_power_point(&h, CircleKind::Circumcircle, &opts).unwrap();
        assert!(r.point.norm() < 1e-8 && r.relspread_at_point < 1e-10, "{:?} {}", r.point, r.relspread_at_point);
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn csv_header() {
        let field = VarianceField { xs: vec![0.0, 1.0], ys: vec![2.0], values: vec![0.5, 0.25] };
        let csv = field.to_csv();
        assert!(csv.starts_with("x,y,relspread\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
