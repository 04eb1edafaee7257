use crate::geom::PlanePoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Stop once the simplex diameter falls below this.
    pub diameter_tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub point: PlanePoint,
    pub value: f64,
    /// Best value after each iteration; never increases.
    pub history: Vec<f64>,
    pub converged: bool,
}

fn diameter(s: &[(PlanePoint, f64); 3]) -> f64 {
    s[0].0.dist(s[1].0).max(s[0].0.dist(s[2].0)).max(s[1].0.dist(s[2].0))
}

/// Nelder–Mead minimization in the plane with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
pub fn nelder_mead(f: impl Fn(PlanePoint) -> f64, start: PlanePoint, opts: SimplexOptions) -> SimplexResult {
    let vertex = |p: PlanePoint| (p, f(p));
    let mut s = [
        vertex(start),
        vertex(start + PlanePoint::new(opts.step, 0.0)),
        vertex(start + PlanePoint::new(0.0, opts.step)),
    ];
    let mut history = Vec::new();
    let mut converged = false;
    for _ in 0..opts.max_iter {
        s.sort_by(|x, y| x.1.total_cmp(&y.1));
        history.push(s[0].1);
        if diameter(&s) < opts.diameter_tol {
            converged = true;
            break;
        }
        let centroid = 0.5 * (s[0].0 + s[1].0);
        let worst = s[2];
        let r = vertex(centroid + (centroid - worst.0));
        if r.1 < s[0].1 {
            let e = vertex(centroid + 2.0 * (centroid - worst.0));
            s[2] = if e.1 < r.1 { e } else { r };
        } else if r.1 < s[1].1 {
            s[2] = r;
        } else {
            let c = if r.1 < worst.1 {
                vertex(centroid + 0.5 * (r.0 - centroid))
            } else {
                vertex(centroid + 0.5 * (worst.0 - centroid))
            };
            if c.1 < worst.1.min(r.1) {
                s[2] = c;
            } else {
                let best = s[0].0;
                s[1] = vertex(best + 0.5 * (s[1].0 - best));
                s[2] = vertex(best + 0.5 * (s[2].0 - best));
            }
        }
    }
    s.sort_by(|x, y| x.1.total_cmp(&y.1));
    SimplexResult { point: s[0].0, value: s[0].1, history, converged }
}
