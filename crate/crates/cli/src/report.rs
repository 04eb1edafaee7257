use std::path::{Path, PathBuf};

use poncelet_core::centers::CircleKind;
use poncelet_core::engine::FamilyHandle;
use poncelet_core::geom::{EllipseSpec, PlanePoint};
use poncelet_core::invariant::InvarianceReport;
use poncelet_core::locus::{LemmaLocus, LocusShape};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// The pair the run was performed on, with its Blaschke parametrization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSummary {
    pub outer: EllipseSpec,
    pub inner: EllipseSpec,
    pub concentric: bool,
    pub p: f64,
    pub q: f64,
    pub f: [f64; 2],
    pub g: [f64; 2],
}

impl PairSummary {
    pub fn of(h: &FamilyHandle) -> Self {
        Self {
            outer: h.pair.outer,
            inner: h.pair.inner,
            concentric: h.pair.is_concentric(),
            p: h.p,
            q: h.q,
            f: [h.f.re, h.f.im],
            g: [h.g.re, h.g.im],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusCheck {
    pub center: String,
    pub samples: usize,
    pub valid: usize,
    pub fit: LocusShape,
    pub predicted: Option<LemmaLocus>,
    /// Largest `|X(λ) - (uλ + v/λ + w)|` over the samples.
    pub parametrization_residual: Option<f64>,
    pub center_error: Option<f64>,
    pub axes_error: Option<f64>,
    /// Skipped when the fitted locus is nearly circular.
    pub rotation_error: Option<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarySummary {
    pub circle: CircleKind,
    /// `None` when the power is constant over the whole search box.
    pub point: Option<PlanePoint>,
    pub relspread_at_point: Option<f64>,
    pub relspread_at_origin: Option<f64>,
    pub iterations: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckDetail {
    Invariance(InvarianceReport),
    /// A relation between reported values, `lhs = rhs`.
    Identity {
        lhs: f64,
        rhs: f64,
        abs_error: f64,
        tol: f64,
    },
    /// A statistic expected to vary: passes when `relspread > min_relspread`.
    Variable {
        statistic: String,
        relspread: f64,
        min_relspread: f64,
    },
    Locus(LocusCheck),
    Stationary(StationarySummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: CheckDetail,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Output of one run. Holds no timing or host data, so identical configs
/// serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub pair: PairSummary,
    pub checks: Vec<Check>,
    pub counts: VerdictCounts,
}

impl RunReport {
    pub fn new(config: RunConfig, pair: PairSummary, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let counts = VerdictCounts { checks: checks.len(), passed, failed: checks.len() - passed };
        Self { config, pair, checks, counts }
    }

    pub fn all_passed(&self) -> bool {
        self.counts.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    /// One line per check, for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
        }
        out.push_str(&format!(
            "{}: {} checks, {} passed, {} failed\n",
            self.config.command.name(),
            self.counts.checks,
            self.counts.passed,
            self.counts.failed
        ));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_s: f64,
}

/// Sidecar file next to a report: `report.json` gets `report.json.timing.json`.
pub fn timing_path(report: &Path) -> PathBuf {
    let mut name = report.as_os_str().to_owned();
    name.push(".timing.json");
    PathBuf::from(name)
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
