//! Power of a base point against named circles over a 3-periodic family.

use serde::{Deserialize, Serialize};

use crate::centers::{derived_triangle, named_circle, CircleKind, DerivedKind, Triangle};
use crate::engine::{confocal_delta, sample_family, FamilyHandle, NamedFamily, PairSpec, ShearFrame};
use crate::error::{Error, Result};
use crate::geom::{power, PlanePoint};

pub const DEFAULT_THRESHOLD: f64 = 1e-7;
pub const DEFAULT_SAMPLES: usize = 256;
/// Relative tolerance when comparing a sampled mean to a closed form.
pub const DEFAULT_MATCH_TOL: f64 = 1e-8;
/// Fraction of samples that must succeed for a statistic to count.
pub const MIN_VALID_FRACTION: f64 = 0.9;

/// Which triangle the circle is built from: the 3-periodic or one of its
/// derived triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleSource {
    Reference,
    Derived(DerivedKind),
}

impl TriangleSource {
    fn apply(&self, t: &Triangle) -> Result<Triangle> {
        match self {
            TriangleSource::Reference => Ok(*t),
            TriangleSource::Derived(kind) => derived_triangle(t, *kind),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TriangleSource::Reference => "reference",
            TriangleSource::Derived(kind) => kind.name(),
        }
    }
}

/// Per-sample values; `gaps` holds the indices where the circle was undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    pub samples: usize,
    pub values: Vec<f64>,
    pub gaps: Vec<usize>,
}

fn is_gap(e: &Error) -> bool {
    matches!(e, Error::RightTriangle | Error::TangentialUndefined)
}

pub fn power_series(
    h: &FamilyHandle,
    kind: CircleKind,
    base: PlanePoint,
    n: usize,
    source: TriangleSource,
) -> Result<PowerSeries> {
    let mut values = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    for (k, sample) in sample_family(h, n)?.iter().enumerate() {
        let value = source.apply(&sample.triangle()).and_then(|t| named_circle(&t, kind)).map(|c| power(base, &c));
        match value {
            Ok(v) => values.push(v),
            Err(e) if is_gap(&e) => gaps.push(k),
            Err(e) => return Err(e),
        }
    }
    Ok(PowerSeries { samples: n, values, gaps })
}

/// Mean and `(max - min) / max(|mean|, 1e-9)`.
pub fn spread_stats(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::INFINITY);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    (mean, (hi - lo) / mean.abs().max(1e-9))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Invariant,
    Variable,
    /// Fewer than 90% of the samples produced a value.
    Insufficient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub statistic: String,
    pub samples: usize,
    pub valid: usize,
    pub mean: f64,
    pub relspread: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub expected: Option<f64>,
    pub abs_error: Option<f64>,
    pub rel_error: Option<f64>,
    pub match_tol: f64,
    pub note: Option<String>,
}

impl InvarianceReport {
    pub fn from_values(statistic: impl Into<String>, samples: usize, values: &[f64], opts: &VerifyOptions) -> Self {
        let (mean, relspread) = spread_stats(values);
        let valid = values.len();
        let verdict = if (valid as f64) < MIN_VALID_FRACTION * samples as f64 {
            Verdict::Insufficient
        } else if relspread < opts.threshold {
            Verdict::Invariant
        } else {
            Verdict::Variable
        };
        Self {
            statistic: statistic.into(),
            samples,
            valid,
            mean,
            relspread,
            threshold: opts.threshold,
            verdict,
            expected: None,
            abs_error: None,
            rel_error: None,
            match_tol: opts.match_tol,
            note: None,
        }
    }

    pub fn with_expected(mut self, expected: f64) -> Self {
        let err = (self.mean - expected).abs();
        self.expected = Some(expected);
        self.abs_error = Some(err);
        self.rel_error = Some(err / expected.abs().max(1e-12));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_invariant(&self) -> bool {
        self.verdict == Verdict::Invariant
    }

    /// Invariant, and within `match_tol` of the closed form when one exists.
    pub fn passed(&self) -> bool {
        self.is_invariant() && self.rel_error.is_none_or(|e| e < self.match_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub threshold: f64,
    pub match_tol: f64,
    pub source: TriangleSource,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            threshold: DEFAULT_THRESHOLD,
            match_tol: DEFAULT_MATCH_TOL,
            source: TriangleSource::Reference,
        }
    }
}

fn statistic_name(kind: CircleKind, source: TriangleSource) -> String {
    match source {
        TriangleSource::Reference => format!("power:{}", kind.name()),
        TriangleSource::Derived(d) => format!("power:{}:{}", d.name(), kind.name()),
    }
}

pub fn verify_invariant(
    h: &FamilyHandle,
    kind: CircleKind,
    base: PlanePoint,
    expected: Option<f64>,
) -> Result<InvarianceReport> {
    verify_invariant_with(h, kind, base, expected, &VerifyOptions::default())
}

pub fn verify_invariant_with(
    h: &FamilyHandle,
    kind: CircleKind,
    base: PlanePoint,
    expected: Option<f64>,
    opts: &VerifyOptions,
) -> Result<InvarianceReport> {
    let series = power_series(h, kind, base, opts.samples, opts.source)?;
    let report = InvarianceReport::from_values(statistic_name(kind, opts.source), series.samples, &series.values, opts);
    Ok(match expected {
        Some(e) => report.with_expected(e),
        None => report,
    })
}

/// `h = 2 ac / a - 1 = (2 delta - a^2 - b^2) / c^2` for the confocal pair.
pub fn confocal_h(a: f64, b: f64) -> f64 {
    (2.0 * confocal_delta(a, b) - a * a - b * b) / ((a - b) * (a + b))
}

/// Euler-circle power of the center over the confocal family, in terms of `h`.
pub fn confocal_p5(a: f64, b: f64) -> f64 {
    let h = confocal_h(a, b);
    let s2 = a * a * (3.0 - h) * (3.0 + h).powi(2) / (4.0 * (1.0 + h));
    let h2 = h * h;
    -(3.0 - h2) * (1.0 - h2) * s2 / (9.0 - h2).powi(2)
}

/// The alternative `delta mu eta (mu^2 + eta^2 - 2) / (mu^2 + eta^2 + 1)`
/// with `mu = a/ac`, `eta = b/bc`. It does not match sampling and is only
/// reported next to [`confocal_p5`].
pub fn confocal_p5_mu_eta(a: f64, b: f64) -> Result<f64> {
    let (_, inner) = NamedFamily::Confocal { a, b }.ellipses()?;
    let (mu, eta) = (a / inner.a, b / inner.b);
    let s = mu * mu + eta * eta;
    Ok(confocal_delta(a, b) * mu * eta * (s - 2.0) / (s + 1.0))
}

/// Circumcircle power of the common center over a concentric family.
pub fn concentric_p3(frame: &ShearFrame) -> f64 {
    let ShearFrame { a, b, ac, bc, .. } = *frame;
    let (ac2, bc2) = (ac * ac, bc * bc);
    -(a * bc / (b * ac)) * (b * b + ac2 - bc2) - (ac2 - bc2)
}

/// Euler-circle power of the common center over a concentric family.
pub fn concentric_p5(frame: &ShearFrame) -> f64 {
    let ShearFrame { a, b, ac, bc, .. } = *frame;
    let (ac2, bc2) = (ac * ac, bc * bc);
    -(a * bc / (2.0 * b * ac)) * (b * b + ac2 - bc2) + bc2
}

/// Pencil parameter `t` of the coaxial circles whose center is
/// `(1 - t) X3 + t X5` and whose coefficients are the same combination of
/// the circumcircle and the Euler circle.
pub fn coaxial_parameter(kind: CircleKind) -> Option<f64> {
    match kind {
        CircleKind::Circumcircle => Some(0.0),
        CircleKind::Euler => Some(1.0),
        CircleKind::SteinerOrthoptic => Some(2.0 / 3.0),
        CircleKind::Orthocentroidal => Some(4.0 / 3.0),
        CircleKind::Polar => Some(2.0),
        _ => None,
    }
}

/// Closed-form power of the center for a named family and circle.
pub fn expected_power(family: &NamedFamily, kind: CircleKind) -> Result<f64> {
    let (p3, p5) = match *family {
        NamedFamily::Incircle { a, b } => (-a * b, -a * b * (a * a + b * b) / (2.0 * (a + b).powi(2))),
        NamedFamily::Circumcircle { r, ac } => (-r * r, -ac * (r - ac)),
        NamedFamily::Homothetic { a, b } => (-(a * a + b * b) / 2.0, -(a * a + b * b) / 8.0),
        NamedFamily::Confocal { a, b } => (-confocal_delta(a, b), confocal_p5(a, b)),
        NamedFamily::Excentral { a, b } => {
            let delta = confocal_delta(a, b);
            (-a * a - b * b - 2.0 * delta, -delta)
        }
        NamedFamily::ConcentricTilted { .. } => {
            let (outer, inner) = family.ellipses()?;
            let frame = ShearFrame::of(&PairSpec { outer, inner });
            (concentric_p3(&frame), concentric_p5(&frame))
        }
    };
    family.ellipses()?;
    if let Some(t) = coaxial_parameter(kind) {
        return Ok((1.0 - t) * p3 + t * p5);
    }
    match (*family, kind) {
        (NamedFamily::Homothetic { a, b }, CircleKind::Anticomplementary) => Ok(-2.0 * (a * a + b * b)),
        (NamedFamily::Confocal { a, b }, CircleKind::Bevan | CircleKind::Spieker | CircleKind::Mandart) => {
            let scale = a * a + b * b + 2.0 * confocal_delta(a, b);
            let h2 = confocal_h(a, b).powi(2);
            Ok(match kind {
                CircleKind::Bevan => -scale,
                CircleKind::Spieker => -(1.0 - h2).powi(2) * scale / 64.0,
                _ => -(-h2 * h2 + 14.0 * h2 + 3.0) * scale / 48.0,
            })
        }
        _ => Err(Error::UnsupportedCombo),
    }
}

/// Note attached to reports whose closed form has a known alternative reading.
pub fn expected_note(family: &NamedFamily, kind: CircleKind) -> Option<String> {
    match (*family, kind) {
        (NamedFamily::Confocal { a, b }, CircleKind::Euler) => confocal_p5_mu_eta(a, b).ok().map(|alt| {
            format!("expected value from the h-form; the mu = a/ac, eta = b/bc closed form evaluates to {alt:.7}")
        }),
        _ => None,
    }
}

/// Family selector for derived-triangle rows. `Dual` is listed for
/// completeness but has no construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFamily {
    Named(NamedFamily),
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedRow {
    pub family: RowFamily,
    pub triangle: DerivedKind,
    pub circle: CircleKind,
}

/// Family / derived triangle / circle combinations with an invariant center power.
pub fn derived_rows() -> Vec<DerivedRow> {
    let row = |family, triangle, circle| DerivedRow { family: RowFamily::Named(family), triangle, circle };
    vec![
        row(NamedFamily::Confocal { a: 2.0, b: 1.0 }, DerivedKind::Extouch, CircleKind::Euler),
        row(NamedFamily::Incircle { a: 1.5, b: 1.0 }, DerivedKind::Intouch, CircleKind::Euler),
        row(NamedFamily::Homothetic { a: 2.0, b: 1.0 }, DerivedKind::Medial, CircleKind::Euler),
        row(NamedFamily::Circumcircle { r: 1.0, ac: 0.6 }, DerivedKind::EulerTriangle, CircleKind::Euler),
        row(NamedFamily::Circumcircle { r: 1.0, ac: 0.6 }, DerivedKind::Orthic, CircleKind::Incircle),
    ]
}

pub fn table4_suite(rows: &[DerivedRow], opts: &VerifyOptions) -> Result<Vec<InvarianceReport>> {
    rows.iter()
        .map(|row| {
            let family = match row.family {
                RowFamily::Named(f) => f,
                RowFamily::Dual => return Err(Error::UnsupportedFamily("dual".into())),
            };
            let h = family.build()?;
            let opts = VerifyOptions { source: TriangleSource::Derived(row.triangle), ..*opts };
            let report = verify_invariant_with(&h, row.circle, PlanePoint::ORIGIN, None, &opts)?;
            Ok(InvarianceReport { statistic: format!("{}:{}", family.name(), report.statistic), ..report })
        })
        .collect()
}
