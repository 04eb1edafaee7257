//! Acceptance criteria, run sequentially so that wall-clock limits are
//! measured on one core. Prints one PASS/FAIL line per criterion.

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use poncelet_core::centers::{center_x, named_circle, CenterSpec, CircleKind, Triangle};
use poncelet_core::engine::{
    build_named_pair, closure_check, generic_pair, FamilyHandle, NamedFamily, PairSpec, ShearFrame,
};
use poncelet_core::geom::{EllipseSpec, PlanePoint, SignedCircle};
use poncelet_core::invariant::{
    confocal_p5_mu_eta, derived_rows, expected_power, power_series, table4_suite, verify_invariant, TriangleSource,
    VerifyOptions,
};
use poncelet_core::locus::{fit_conic, predicted_locus, sample_locus, LemmaLocus};
use poncelet_core::random::{
    random_concentric_pair, random_generic_pair, random_tilted_family, random_triangle, rng_from_env,
};
use poncelet_core::search::{
    pencil_invariance_scan, pencil_member, pencil_power, stationary_power_point, SearchOptions,
};

/// Worst observed value per named quantity, each against its own bound.
#[derive(Default)]
struct Checks {
    rows: Vec<(String, f64, f64, bool)>,
    notes: Vec<String>,
}

impl Checks {
    /// Records `value < bound`; keeps the worst value per label.
    fn below(&mut self, label: &str, value: f64, bound: f64) {
        self.record(label, value, bound, false);
    }

    /// Records `value > bound`; keeps the smallest value per label.
    fn above(&mut self, label: &str, value: f64, bound: f64) {
        self.record(label, value, bound, true);
    }

    fn record(&mut self, label: &str, value: f64, bound: f64, lower: bool) {
        let value = if value.is_nan() { f64::INFINITY * if lower { -1.0 } else { 1.0 } } else { value };
        match self.rows.iter_mut().find(|r| r.0 == label) {
            Some(row) => {
                row.1 = if lower { row.1.min(value) } else { row.1.max(value) };
            }
            None => self.rows.push((label.to_string(), value, bound, lower)),
        }
    }

    fn fail(&mut self, label: &str, why: impl std::fmt::Display) {
        self.rows.push((format!("{label}: {why}"), f64::INFINITY, 0.0, false));
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(|(_, v, b, lower)| if *lower { v > b } else { v < b })
    }

    fn summary(&self) -> String {
        let mut parts: Vec<String> = self
            .rows
            .iter()
            .map(|(l, v, b, lower)| format!("{l} {v:.2e} {} {b:.0e}", if *lower { ">" } else { "<" }))
            .collect();
        parts.extend(self.notes.iter().cloned());
        parts.join("; ")
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-300)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn table1(ck: &mut Checks) {
    let rows = [
        (NamedFamily::Incircle { a: 1.5, b: 1.0 }, -1.5, -0.39),
        (NamedFamily::Circumcircle { r: 1.0, ac: 0.6 }, -1.0, -0.24),
        (NamedFamily::Homothetic { a: 2.0, b: 1.0 }, -2.5, -0.625),
        (NamedFamily::Confocal { a: 2.0, b: 1.0 }, -13f64.sqrt(), f64::NAN),
        (NamedFamily::Excentral { a: 2.0, b: 1.0 }, -12.2111026, -13f64.sqrt()),
    ];
    for (family, p3_value, p5_value) in rows {
        let h = build_named_pair(family).expect("family builds");
        for (kind, listed) in [(CircleKind::Circumcircle, p3_value), (CircleKind::Euler, p5_value)] {
            let expected = expected_power(&family, kind).expect("closed form");
            let r = verify_invariant(&h, kind, PlanePoint::ORIGIN, Some(expected)).expect("sampling");
            ck.below("rel error", r.rel_error.unwrap(), 1e-8);
            ck.below("relspread", r.relspread, 1e-9);
            if listed.is_finite() {
                // Listed decimals are rounded to 7 places.
                ck.below("closed form vs listed value", (expected - listed).abs(), 1e-7);
            }
        }
    }
    let p5 = expected_power(&NamedFamily::Confocal { a: 2.0, b: 1.0 }, CircleKind::Euler).unwrap();
    ck.note(format!(
        "confocal P5 {p5:.7} (listed -0.2854795, off by {:.1e}; mu/eta form gives {:.4})",
        (p5 + 0.2854795).abs(),
        confocal_p5_mu_eta(2.0, 1.0).unwrap()
    ));
}

fn concentric_tilted_powers(ck: &mut Checks) {
    let mut rng = rng_from_env();
    for _ in 0..50 {
        let family = random_tilted_family(&mut rng);
        let h = build_named_pair(family).expect("tilted family");
        let p3 = verify_invariant(&h, CircleKind::Circumcircle, PlanePoint::ORIGIN, None).unwrap();
        let p5 = verify_invariant(&h, CircleKind::Euler, PlanePoint::ORIGIN, None).unwrap();
        ck.below("relspread P3", p3.relspread, 1e-8);
        ck.below("relspread P5", p5.relspread, 1e-8);
        ck.below("P3 closed form rel", rel(p3.mean, expected_power(&family, CircleKind::Circumcircle).unwrap()), 1e-7);
        ck.below("P5 closed form rel", rel(p5.mean, expected_power(&family, CircleKind::Euler).unwrap()), 1e-7);
        let frame = ShearFrame::of(&h.pair);
        let identity = 2.0 * p5.mean - p3.mean - (frame.ac.powi(2) + frame.bc.powi(2));
        ck.below("2P5 - P3 - ac^2 - bc^2", identity.abs(), 1e-8);
    }
}

fn closure(ck: &mut Checks) {
    let mut rng = rng_from_env();
    for i in 0..100 {
        let h = if i % 2 == 0 { random_concentric_pair(&mut rng) } else { random_generic_pair(&mut rng) };
        let inner = h.pair.inner;
        let fat = PairSpec {
            outer: h.pair.outer,
            inner: EllipseSpec::new(inner.center, 1.01 * inner.a, 1.01 * inner.b, inner.theta),
        };
        for _ in 0..20 {
            let seed = rng.gen_range(0.0..std::f64::consts::TAU);
            match closure_check(&h.pair, seed, 1e-9) {
                Ok(r) => ck.below("residual", r.residual, 1e-9),
                Err(e) => ck.fail("closure", e),
            }
            match closure_check(&fat, seed, 1e-9) {
                Ok(r) => ck.above("perturbed residual", r.residual, 1e-3),
                Err(e) => ck.fail("perturbed closure", e),
            }
        }
    }
}

fn circular_loci(ck: &mut Checks) {
    let (f, g) = (c(0.3, 0.0), c(0.1, 0.2));
    let h = generic_pair(1.0, 1.0, f, g).unwrap();
    let (s, m) = (f + g, (f * g).norm());
    let axis = s / s.norm();
    let expected = [(2, s / 3.0, m / 3.0), (4, s, m), (5, s / 2.0, m / 2.0), (20, -s, m)];
    for (k, center, radius) in expected {
        let locus = sample_locus(&h, &CenterSpec::Kimberling(k), 512).unwrap();
        let fit = fit_conic(&locus.positions()).unwrap();
        let Some(e) = fit.ellipse() else {
            ck.fail(&format!("X{k}"), "locus is not an ellipse");
            continue;
        };
        ck.below("center", (e.center.to_complex() - center).norm(), 1e-7);
        ck.below("radius", (e.a - radius).abs().max((e.b - radius).abs()), 1e-7);
        let off_line = (axis.conj() * e.center.to_complex()).im.abs();
        ck.below("distance of center from line O-(f+g)", off_line, 1e-9);
        if k == 5 {
            ck.below("X5 center - inner center", e.center.dist(h.pair.inner.center), 1e-9);
        }
    }
}

fn euler_line_loci(ck: &mut Checks) {
    let mut rng = rng_from_env();
    for _ in 0..20 {
        let h = random_generic_pair(&mut rng);
        let mut fitted_centers = Vec::new();
        for k in [2u32, 3, 4, 5, 20] {
            let spec = CenterSpec::Kimberling(k);
            let (alpha, beta) = spec.alpha_beta().unwrap();
            let predicted = predicted_locus(&h, alpha, beta);
            let locus = sample_locus(&h, &spec, 512).unwrap();
            let pointwise =
                locus.points.iter().map(|p| (p.point.to_complex() - predicted.at(p.lambda)).norm()).fold(0.0, f64::max);
            ck.below("pointwise residual", pointwise, 1e-9);
            let fit = fit_conic(&locus.positions()).unwrap();
            let (Some(e), LemmaLocus::Ellipse(p)) = (fit.ellipse(), predicted.shape) else {
                ck.fail(&format!("X{k}"), "fit or prediction is not an ellipse");
                continue;
            };
            ck.below("center", e.center.dist(p.center), 1e-6);
            ck.below("semi-axes", (e.a - p.a).abs().max((e.b - p.b).abs()), 1e-6);
            if (e.a - e.b) / e.a >= 1e-4 {
                let d = (e.theta - p.theta).rem_euclid(std::f64::consts::PI);
                ck.below("rotation", d.min(std::f64::consts::PI - d), 1e-6);
                if k == 2 || k == 4 {
                    let m = e.theta.rem_euclid(FRAC_PI_2);
                    ck.below("X2/X4 rotation mod pi/2", m.min(FRAC_PI_2 - m), 1e-6);
                }
            }
            let gamma = beta.re;
            fitted_centers.push((gamma, e.center, predicted));
        }
        for (gamma, center, predicted) in fitted_centers {
            ck.below("center - (w0 + w1 gamma)", (center.to_complex() - predicted.center_at_gamma(gamma)).norm(), 1e-9);
        }
    }
}

fn pencils(ck: &mut Checks) {
    let family = NamedFamily::ConcentricTilted { a: 1.5, b: 1.0, ac: 0.8, bc: 0.4 };
    let h = build_named_pair(family).unwrap();
    let opts = VerifyOptions::default();
    let ts = [-1.0, 0.0, 0.5, 2.0 / 3.0, 1.0, 2.0, 5.0];
    for r in pencil_invariance_scan(&h, &ts, &opts).unwrap() {
        ck.below("pencil relspread", r.relspread, 1e-7);
    }
    let tangential = verify_invariant(&h, CircleKind::Tangential, PlanePoint::ORIGIN, None).unwrap();
    ck.above("tangential relspread", tangential.relspread, 1e-3);
    let mut rng = rng_from_env();
    for _ in 0..1000 {
        let t = random_triangle(&mut rng, 0.05);
        let c1 = named_circle(&t, CircleKind::Circumcircle).unwrap();
        let c2 = named_circle(&t, CircleKind::Euler).unwrap();
        let p = PlanePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let s = rng.gen_range(-2.0..5.0);
        let member = pencil_member(&c1, &c2, s);
        ck.below("affine power identity", (member.power(p) - pencil_power(p, &c1, &c2, s)).abs(), 1e-12);
    }
}

fn appendix(ck: &mut Checks) {
    let homothetic = NamedFamily::Homothetic { a: 2.0, b: 1.0 };
    let confocal = NamedFamily::Confocal { a: 2.0, b: 1.0 };
    let rows = [
        (homothetic, CircleKind::Anticomplementary, -10.0),
        (confocal, CircleKind::Bevan, -12.2111026),
        (confocal, CircleKind::Spieker, -0.0398117),
        (confocal, CircleKind::Mandart, -2.6228426),
    ];
    for (family, kind, listed) in rows {
        let h = build_named_pair(family).unwrap();
        let expected = expected_power(&family, kind).unwrap();
        let r = verify_invariant(&h, kind, PlanePoint::ORIGIN, Some(expected)).unwrap();
        ck.below("sampled vs closed form rel", r.rel_error.unwrap(), 1e-7);
        ck.below("relspread", r.relspread, 1e-8);
        let off = rel(expected, listed);
        if off > 1e-7 {
            ck.note(format!("{} closed form {expected:.7} vs listed {listed} (rel {off:.1e})", kind.name()));
        }
    }
}

fn table4(ck: &mut Checks) {
    let opts = VerifyOptions::default();
    match table4_suite(&derived_rows(), &opts) {
        Ok(reports) => {
            for r in reports {
                ck.below("relspread", r.relspread, 1e-7);
                ck.above("valid fraction", r.valid as f64 / r.samples as f64, 0.9 - 1e-12);
            }
        }
        Err(e) => ck.fail("suite", e),
    }
    // Gaps are recorded rather than dropped: the orthic triangle of a right triangle is undefined.
    let h = build_named_pair(NamedFamily::Circumcircle { r: 1.0, ac: 0.6 }).unwrap();
    let series = power_series(
        &h,
        CircleKind::Incircle,
        PlanePoint::ORIGIN,
        64,
        TriangleSource::Derived(derived_rows()[4].triangle),
    )
    .unwrap();
    ck.below("unaccounted samples", (series.samples - series.values.len() - series.gaps.len()) as f64, 0.5);
}

fn conjecture2(ck: &mut Checks) {
    let mut rng = rng_from_env();
    let opts = SearchOptions::default();
    for _ in 0..5 {
        let h = random_generic_pair(&mut rng);
        let mut points = Vec::new();
        for kind in [CircleKind::Circumcircle, CircleKind::Euler] {
            match stationary_power_point(&h, kind, &opts) {
                Ok(r) => {
                    ck.below("relspread at point", r.relspread_at_point, 1e-8);
                    ck.above("relspread at O", r.relspread_at_origin, 1e-2);
                    points.push(r.point);
                }
                Err(e) => ck.fail("search", e),
            }
        }
        if let [p3, p5] = points[..] {
            ck.above("|P3 - P5|", p3.dist(p5), 1e-6);
            ck.below("P3 vs radical center", p3.dist(radical_center(&h, CircleKind::Circumcircle)), 1e-6);
            ck.below("P5 vs radical center", p5.dist(radical_center(&h, CircleKind::Euler)), 1e-6);
        }
    }
}

/// Least-squares common radical center of the family circles: power
/// differences between samples are linear in the point.
fn radical_center(h: &FamilyHandle, kind: CircleKind) -> PlanePoint {
    let circles: Vec<SignedCircle> = poncelet_core::engine::sample_family(h, 64)
        .unwrap()
        .iter()
        .map(|s| named_circle(&s.triangle(), kind).unwrap())
        .collect();
    let k0 = circles[0].coeffs();
    let (mut m, mut rhs) = (nalgebra::Matrix2::zeros(), nalgebra::Vector2::zeros());
    for circle in &circles[1..] {
        let k = circle.coeffs();
        let row = nalgebra::Vector2::new(k[0] - k0[0], k[1] - k0[1]);
        m += row * row.transpose();
        rhs -= row * (k[2] - k0[2]);
    }
    let x = m.lu().solve(&rhs).expect("radical center");
    PlanePoint::new(x[0], x[1])
}

fn solve_lines(n1: PlanePoint, d1: f64, n2: PlanePoint, d2: f64) -> PlanePoint {
    // n1 . x = d1, n2 . x = d2
    let det = n1.x * n2.y - n1.y * n2.x;
    PlanePoint::new((d1 * n2.y - d2 * n1.y) / det, (n1.x * d2 - n2.x * d1) / det)
}

fn orthocenter(t: &Triangle) -> PlanePoint {
    let [a, b, c] = t.vertices;
    solve_lines(c - b, (c - b).dot(a), c - a, (c - a).dot(b))
}

fn circumcenter(p: [PlanePoint; 3]) -> PlanePoint {
    let [a, b, c] = p;
    solve_lines(b - a, 0.5 * (b.norm_sqr() - a.norm_sqr()), c - a, 0.5 * (c.norm_sqr() - a.norm_sqr()))
}

fn kimberling(ck: &mut Checks) {
    let mut rng = rng_from_env();
    for _ in 0..1000 {
        let t = random_triangle(&mut rng, 0.05);
        let [a, b, cc] = t.vertices;
        let x = |k: u32| center_x(&t, k).unwrap();
        let (x2, x3) = (x(2), x(3));
        let h = orthocenter(&t);
        let nine = circumcenter([a.midpoint(b), b.midpoint(cc), cc.midpoint(a)]);
        let anti = Triangle::new(b + cc - a, cc + a - b, a + b - cc);
        ck.below("X4 = 3X2 - 2X3", x(4).dist(h).max((3.0 * x2 - 2.0 * x3).dist(h)), 1e-10);
        ck.below("X5 = (3X2 - X3)/2", x(5).dist(nine).max((0.5 * (3.0 * x2 - x3)).dist(nine)), 1e-10);
        let de_longchamps = orthocenter(&anti);
        ck.below("X20 = 4X3 - 3X2", x(20).dist(de_longchamps).max((4.0 * x3 - 3.0 * x2).dist(de_longchamps)), 1e-10);
        let x381 = x2.midpoint(h);
        ck.below("X381 = 2X2 - X3", x(381).dist(x381).max((2.0 * x2 - x3).dist(x381)), 1e-10);
        let circ = named_circle(&t, CircleKind::Circumcircle).unwrap();
        let euler = named_circle(&t, CircleKind::Euler).unwrap();
        let on_circ = t.vertices.iter().map(|&p| circ.power(p).abs()).fold(0.0, f64::max);
        let feet = [a.midpoint(b), b.midpoint(cc), cc.midpoint(a), h.midpoint(a), h.midpoint(b), h.midpoint(cc)];
        let on_euler = feet.iter().map(|&p| euler.power(p).abs()).fold(0.0, f64::max);
        ck.below("vertices on circumcircle", on_circ, 1e-10);
        ck.below("midpoints on Euler circle", on_euler, 1e-10);
        let s = t.sidelengths().unwrap();
        let ex = |i: usize| {
            let mut w = s;
            w[i] = -w[i];
            t.barycentric_point(w).unwrap()
        };
        let bevan = circumcenter([ex(0), ex(1), ex(2)]);
        ck.below("Bevan = 2X3 - X1", x(40).dist(bevan).max((2.0 * x3 - x(1)).dist(bevan)), 1e-9);
    }
}

type Criterion = (u32, &'static str, f64, fn(&mut Checks));

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "named-family powers of the center", 2.0, table1),
        (2, "concentric tilted powers", 10.0, concentric_tilted_powers),
        (3, "closure oracle", 10.0, closure),
        (4, "circular loci for a circular outer ellipse", 2.0, circular_loci),
        (5, "Euler-line loci of generic pairs", 30.0, euler_line_loci),
        (6, "coaxial pencils", 5.0, pencils),
        (7, "additional circles", 3.0, appendix),
        (8, "derived-triangle suite", 5.0, table4),
        (9, "stationary power points", 60.0, conjecture2),
        (10, "triangle center kernel", 2.0, kimberling),
    ];
    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        let mut ck = Checks::default();
        let start = Instant::now();
        run(&mut ck);
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs_f64(limit);
        let pass = ck.passed() && in_time;
        failures += usize::from(!pass);
        println!(
            "criterion {id:>2} {}: {name} [{:.3}s / {limit}s{}] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { " OVER TIME" },
            ck.summary()
        );
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
