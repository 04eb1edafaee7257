//! Deterministic SVG figures of a pair, sampled triangles, circles and loci.
//!
//! Coordinates are printed with six decimals and the y axis is flipped so the
//! figure reads in the usual mathematical orientation.

use std::fmt::Write;
use std::path::Path;

use poncelet_core::geom::{EllipseSpec, PlanePoint, SignedCircle};

use crate::error::{CliError, CliResult};

const MARGIN: f64 = 1.2;
const EMPTY_EXTENT: f64 = 1.0;
const WIDTH_PX: f64 = 800.0;
const ELLIPSE_SEGMENTS: usize = 256;

const OUTER_STROKE: &str = "#000000";
const INNER_STROKE: &str = "#1f77b4";
const TRIANGLE_STROKE: &str = "#7f7f7f";
const CIRCLE_STROKE: &str = "#2ca02c";
const LOCUS_STROKES: [&str; 5] = ["#d62728", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"];

#[derive(Debug, Clone, PartialEq)]
pub struct LocusPath {
    pub label: String,
    pub points: Vec<PlanePoint>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub outer: Option<EllipseSpec>,
    pub inner: Option<EllipseSpec>,
    pub triangles: Vec<[PlanePoint; 3]>,
    pub circles: Vec<SignedCircle>,
    pub loci: Vec<LocusPath>,
}

fn fmt(v: f64) -> String {
    // Avoid "-0.000000" so equal scenes give equal bytes regardless of signed zeros.
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').bytes().all(|c| c == b'0' || c == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn xy(p: PlanePoint) -> String {
    format!("{},{}", fmt(p.x), fmt(-p.y))
}

fn closed_path(points: impl IntoIterator<Item = PlanePoint>) -> String {
    let mut d = String::new();
    for (i, p) in points.into_iter().enumerate() {
        d.push_str(if i == 0 { "M" } else { " L" });
        d.push_str(&xy(p));
    }
    d.push_str(" Z");
    d
}

fn ellipse_element(out: &mut String, e: &EllipseSpec, class: &str, stroke: &str) {
    let d = closed_path(e.sample(ELLIPSE_SEGMENTS));
    let _ = writeln!(
        out,
        r#"<path class="{class}" d="{d}" fill="none" stroke="{stroke}" vector-effect="non-scaling-stroke"/>"#
    );
}

/// Renders the scene. Elements appear in a fixed order: axes, outer
/// ellipse, inner ellipse, triangles, circles, loci.
pub fn render_svg(scene: &Scene) -> String {
    let (hx, hy) = scene
        .outer
        .map(|o| {
            let (hx, hy) = o.half_extents();
            (o.center.x.abs() + hx, o.center.y.abs() + hy)
        })
        .unwrap_or((EMPTY_EXTENT, EMPTY_EXTENT));
    let (hx, hy) = (MARGIN * hx, MARGIN * hy);
    let height_px = (WIDTH_PX * hy / hx).round();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        WIDTH_PX,
        height_px,
        fmt(-hx),
        fmt(-hy),
        fmt(2.0 * hx),
        fmt(2.0 * hy)
    );
    let _ = writeln!(out, r#"<g stroke-width="1.5">"#);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="0" x2="{}" y2="0" stroke="{TRIANGLE_STROKE}" stroke-dasharray="4 4" vector-effect="non-scaling-stroke"/>"#,
        fmt(-hx),
        fmt(hx)
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="0" y1="{}" x2="0" y2="{}" stroke="{TRIANGLE_STROKE}" stroke-dasharray="4 4" vector-effect="non-scaling-stroke"/>"#,
        fmt(-hy),
        fmt(hy)
    );
    if let Some(e) = &scene.outer {
        ellipse_element(&mut out, e, "outer", OUTER_STROKE);
    }
    if let Some(e) = &scene.inner {
        ellipse_element(&mut out, e, "inner", INNER_STROKE);
    }
    for t in &scene.triangles {
        let pts: Vec<String> = t.iter().map(|p| xy(*p)).collect();
        let _ = writeln!(
            out,
            r#"<polygon class="triangle" points="{}" fill="none" stroke="{TRIANGLE_STROKE}" vector-effect="non-scaling-stroke"/>"#,
            pts.join(" ")
        );
    }
    for c in &scene.circles {
        // Imaginary-radius members of a pencil have nothing to draw.
        if let Some(r) = c.radius() {
            let _ = writeln!(
                out,
                r#"<circle class="circle" cx="{}" cy="{}" r="{}" fill="none" stroke="{CIRCLE_STROKE}" vector-effect="non-scaling-stroke"/>"#,
                fmt(c.center.x),
                fmt(-c.center.y),
                fmt(r)
            );
        }
    }
    for (i, locus) in scene.loci.iter().enumerate() {
        if locus.points.is_empty() {
            continue;
        }
        let stroke = LOCUS_STROKES[i % LOCUS_STROKES.len()];
        let _ = writeln!(
            out,
            r#"<path class="locus" data-label="{}" d="{}" fill="none" stroke="{stroke}" vector-effect="non-scaling-stroke"/>"#,
            locus.label,
            closed_path(locus.points.iter().copied())
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn write_svg(scene: &Scene, path: &Path) -> CliResult<()> {
    std::fs::write(path, render_svg(scene)).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
