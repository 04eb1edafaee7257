//! Dispatch of a [`RunConfig`] to the analysis routines.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use poncelet_core::centers::{CenterSpec, CircleKind};
use poncelet_core::engine::{sample_family, FamilyHandle, ShearFrame};
use poncelet_core::invariant::{
    coaxial_parameter, concentric_p3, concentric_p5, expected_note, expected_power, verify_invariant_with,
    InvarianceReport, TriangleSource, VerifyOptions, DEFAULT_MATCH_TOL, DEFAULT_THRESHOLD,
};
use poncelet_core::locus::{classify_locus, predicted_locus, sample_locus, LemmaLocus, LocusSamples, LocusShape};
use poncelet_core::search::{pencil_invariance_scan, stationary_power_point, SearchOptions};
use poncelet_core::Error;

use crate::config::{Command, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{write_text, Check, CheckDetail, LocusCheck, PairSummary, RunReport, StationarySummary};
use crate::svg::{write_svg, LocusPath, Scene};

/// Default tolerance for locus comparisons against the closed form.
pub const LOCUS_TOL: f64 = 1e-6;
/// Pointwise tolerance on the closed-form locus parametrization.
pub const PARAMETRIZATION_TOL: f64 = 1e-9;
/// Default bound on the relspread at a stationary power point.
pub const SEARCH_TOL: f64 = 1e-8;
/// Relspread above which the tangential circle counts as non-invariant.
pub const VARIABLE_MIN: f64 = 1e-3;
/// Rotations of loci this close to circular are not compared.
const NEAR_CIRCLE: f64 = 1e-4;

pub const DEFAULT_PENCIL_TS: [f64; 7] = [-1.0, 0.0, 0.5, 2.0 / 3.0, 1.0, 2.0, 5.0];

pub fn run_suite(config: &RunConfig) -> CliResult<RunReport> {
    config.validate()?;
    if config.csv.is_some() && !matches!(config.command, Command::Locus | Command::Search) {
        return Err(CliError::InvalidConfig("--csv is only produced by locus and search".into()));
    }
    let h = config.pair.build()?;
    let checks = match config.command {
        Command::Verify => verify_checks(config, &h)?,
        Command::Locus => locus_checks(config, &h)?,
        Command::Search => search_checks(config, &h)?,
        Command::Pencil => pencil_checks(config, &h)?,
        Command::Render => Vec::new(),
    };
    if let Some(path) = &config.svg {
        write_svg(&scene(config, &h)?, path)?;
    }
    Ok(RunReport::new(config.clone(), PairSummary::of(&h), checks))
}

fn verify_options(config: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        samples: config.samples,
        threshold: config.tol.unwrap_or(DEFAULT_THRESHOLD),
        match_tol: config.tol.unwrap_or(DEFAULT_MATCH_TOL),
        source: config.triangle.map_or(TriangleSource::Reference, TriangleSource::Derived),
    }
}

fn default_verify_circles(config: &RunConfig) -> Vec<CircleKind> {
    if !config.circles.is_empty() {
        return config.circles.clone();
    }
    let mut circles = vec![
        CircleKind::Circumcircle,
        CircleKind::Euler,
        CircleKind::SteinerOrthoptic,
        CircleKind::Orthocentroidal,
        CircleKind::Polar,
    ];
    if let Some(family) = config.pair.named() {
        for kind in [CircleKind::Anticomplementary, CircleKind::Bevan, CircleKind::Spieker, CircleKind::Mandart] {
            if expected_power(family, kind).is_ok() {
                circles.push(kind);
            }
        }
    }
    circles
}

/// Closed form for the power of the center, when one is known.
fn closed_form(config: &RunConfig, h: &FamilyHandle, kind: CircleKind) -> Option<f64> {
    if config.triangle.is_some() {
        return None;
    }
    if let Some(family) = config.pair.named() {
        return expected_power(family, kind).ok();
    }
    if !h.pair.is_concentric() {
        return None;
    }
    let frame = ShearFrame::of(&h.pair);
    coaxial_parameter(kind).map(|t| (1.0 - t) * concentric_p3(&frame) + t * concentric_p5(&frame))
}

fn invariance_check(report: InvarianceReport) -> Check {
    Check { name: report.statistic.clone(), passed: report.passed(), detail: CheckDetail::Invariance(report) }
}

fn verify_checks(config: &RunConfig, h: &FamilyHandle) -> CliResult<Vec<Check>> {
    let opts = verify_options(config);
    let base = h.pair.outer.center;
    let mut checks = Vec::new();
    let mut means = (None, None);
    for kind in default_verify_circles(config) {
        let mut report = verify_invariant_with(h, kind, base, closed_form(config, h, kind), &opts)?;
        if let (Some(family), None) = (config.pair.named(), config.triangle) {
            if let Some(note) = expected_note(family, kind) {
                report = report.with_note(note);
            }
        }
        if report.is_invariant() {
            match kind {
                CircleKind::Circumcircle => means.0 = Some(report.mean),
                CircleKind::Euler => means.1 = Some(report.mean),
                _ => {}
            }
        }
        checks.push(invariance_check(report));
    }
    if let (Some(p3), Some(p5), true, None) = (means.0, means.1, h.pair.is_concentric(), config.triangle) {
        let inner = h.pair.inner;
        let (lhs, rhs) = (2.0 * p5 - p3, inner.a * inner.a + inner.b * inner.b);
        let tol = config.tol.unwrap_or(DEFAULT_MATCH_TOL);
        let abs_error = (lhs - rhs).abs();
        checks.push(Check {
            name: "identity:2*euler-circumcircle=ac^2+bc^2".into(),
            passed: abs_error < tol,
            detail: CheckDetail::Identity { lhs, rhs, abs_error, tol },
        });
    }
    Ok(checks)
}

fn centers_or_default(config: &RunConfig) -> Vec<CenterSpec> {
    if config.centers.is_empty() {
        vec![CenterSpec::Kimberling(3), CenterSpec::Kimberling(5)]
    } else {
        config.centers.clone()
    }
}

fn rotation_error(t1: f64, t2: f64) -> f64 {
    let d = (t1 - t2).rem_euclid(PI);
    d.min(PI - d)
}

fn locus_check(h: &FamilyHandle, center: &CenterSpec, n: usize, tol: f64) -> CliResult<(Check, LocusSamples)> {
    let samples = sample_locus(h, center, n)?;
    let fit = classify_locus(&samples.positions())?;
    let predicted = center.alpha_beta().map(|(alpha, beta)| predicted_locus(h, alpha, beta));
    let parametrization_residual = predicted
        .map(|pl| samples.points.iter().map(|p| (p.point.to_complex() - pl.at(p.lambda)).norm()).fold(0.0, f64::max));
    let (mut center_error, mut axes_error, mut rotation) = (None, None, None);
    let passed = match (&fit, predicted.map(|p| p.shape)) {
        (LocusShape::Conic(c), Some(LemmaLocus::Ellipse(e))) => match c.ellipse() {
            Some(fitted) => {
                center_error = Some(fitted.center.dist(e.center));
                axes_error = Some((fitted.a - e.a).abs().max((fitted.b - e.b).abs()));
                if (fitted.a - fitted.b) / fitted.a >= NEAR_CIRCLE {
                    rotation = Some(rotation_error(fitted.theta, e.theta));
                }
                [center_error, axes_error, rotation].iter().flatten().all(|err| *err < tol)
            }
            None => false,
        },
        (LocusShape::Stationary { point, .. }, Some(shape @ LemmaLocus::Segment { half_length, .. })) => {
            center_error = Some(point.dist(shape.center()));
            half_length < tol && center_error.is_some_and(|e| e < tol)
        }
        // Segments and other closed-form shapes are judged by the pointwise residual alone.
        (_, Some(LemmaLocus::Segment { .. })) => true,
        (LocusShape::Conic(c), None) => c.ellipse().is_some() && c.rms_residual < tol,
        (LocusShape::Stationary { .. }, None) => true,
        (LocusShape::Stationary { .. }, Some(LemmaLocus::Ellipse(_))) => false,
    };
    let passed = passed && parametrization_residual.is_none_or(|r| r < PARAMETRIZATION_TOL);
    let detail = LocusCheck {
        center: center.label(),
        samples: samples.samples,
        valid: samples.points.len(),
        fit,
        predicted: predicted.map(|p| p.shape),
        parametrization_residual,
        center_error,
        axes_error,
        rotation_error: rotation,
        tol,
    };
    let check = Check { name: format!("locus:{}", center.label()), passed, detail: CheckDetail::Locus(detail) };
    Ok((check, samples))
}

/// `base.csv` for a single output, `base_<label>.csv` when there are several.
fn output_path(base: &Path, label: &str, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    base.with_file_name(name)
}

fn locus_checks(config: &RunConfig, h: &FamilyHandle) -> CliResult<Vec<Check>> {
    let centers = centers_or_default(config);
    let tol = config.tol.unwrap_or(LOCUS_TOL);
    let mut checks = Vec::new();
    for center in &centers {
        let (check, samples) = locus_check(h, center, config.samples, tol)?;
        if let Some(csv) = &config.csv {
            write_text(&output_path(csv, &center.label(), centers.len() > 1), &samples.to_csv())?;
        }
        checks.push(check);
    }
    Ok(checks)
}

fn search_checks(config: &RunConfig, h: &FamilyHandle) -> CliResult<Vec<Check>> {
    let circles = if config.circles.is_empty() {
        vec![CircleKind::Circumcircle, CircleKind::Euler]
    } else {
        config.circles.clone()
    };
    let tol = config.tol.unwrap_or(SEARCH_TOL);
    let opts = SearchOptions { grid: config.grid, refine: config.refine, samples: config.samples };
    let mut checks = Vec::new();
    for kind in &circles {
        let (summary, passed) = match stationary_power_point(h, *kind, &opts) {
            Ok(r) => {
                if let Some(csv) = &config.csv {
                    write_text(&output_path(csv, kind.name(), circles.len() > 1), &r.grid.to_csv())?;
                }
                let passed = r.relspread_at_point < tol && r.relspread_at_point <= r.relspread_at_origin;
                let summary = StationarySummary {
                    circle: *kind,
                    point: Some(r.point),
                    relspread_at_point: Some(r.relspread_at_point),
                    relspread_at_origin: Some(r.relspread_at_origin),
                    iterations: r.history.len(),
                    tol,
                };
                (summary, passed)
            }
            Err(Error::NoMinimum) => {
                let summary = StationarySummary {
                    circle: *kind,
                    point: None,
                    relspread_at_point: None,
                    relspread_at_origin: None,
                    iterations: 0,
                    tol,
                };
                (summary, true)
            }
            Err(e) => return Err(e.into()),
        };
        checks.push(Check {
            name: format!("stationary:{}", kind.name()),
            passed,
            detail: CheckDetail::Stationary(summary),
        });
    }
    Ok(checks)
}

fn pencil_checks(config: &RunConfig, h: &FamilyHandle) -> CliResult<Vec<Check>> {
    let ts = if config.ts.is_empty() { DEFAULT_PENCIL_TS.to_vec() } else { config.ts.clone() };
    let opts = verify_options(config);
    let mut checks: Vec<Check> = pencil_invariance_scan(h, &ts, &opts)?.into_iter().map(invariance_check).collect();
    if h.pair.is_concentric() {
        let report = verify_invariant_with(h, CircleKind::Tangential, h.pair.outer.center, None, &opts)?;
        checks.push(Check {
            name: "variable:power:tangential".into(),
            passed: report.relspread > VARIABLE_MIN,
            detail: CheckDetail::Variable {
                statistic: report.statistic,
                relspread: report.relspread,
                min_relspread: VARIABLE_MIN,
            },
        });
    }
    Ok(checks)
}

/// Pair, a few sampled triangles with the requested circles, and the loci
/// of the requested centers (locus and render only).
pub fn scene(config: &RunConfig, h: &FamilyHandle) -> CliResult<Scene> {
    let mut triangles = Vec::new();
    let mut circles = Vec::new();
    if config.polygons > 0 {
        let n = config.polygons.max(3);
        for s in sample_family(h, n)?.into_iter().take(config.polygons) {
            let t = s.triangle();
            for kind in &config.circles {
                match poncelet_core::centers::named_circle(&t, *kind) {
                    Ok(c) => circles.push(c),
                    Err(Error::RightTriangle | Error::TangentialUndefined) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            triangles.push(s.vertices);
        }
    }
    let mut loci = Vec::new();
    if matches!(config.command, Command::Locus | Command::Render) {
        let centers =
            if config.command == Command::Locus { centers_or_default(config) } else { config.centers.clone() };
        for center in &centers {
            let samples = sample_locus(h, center, config.samples)?;
            loci.push(LocusPath { label: center.label(), points: samples.positions() });
        }
    }
    Ok(Scene { outer: Some(h.pair.outer), inner: Some(h.pair.inner), triangles, circles, loci })
}
