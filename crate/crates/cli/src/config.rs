use std::path::{Path, PathBuf};

use num_complex::Complex64;
use poncelet_core::centers::{CenterSpec, CircleKind, DerivedKind};
use poncelet_core::engine::{generic_pair, FamilyHandle, NamedFamily, PairSpec};
use poncelet_core::geom::{EllipseSpec, PlanePoint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Fewest family samples accepted by the verification commands.
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Verify,
    Locus,
    Search,
    Pencil,
    Render,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Locus => "locus",
            Command::Search => "search",
            Command::Pencil => "pencil",
            Command::Render => "render",
        }
    }

    pub fn default_samples(&self) -> usize {
        match self {
            Command::Verify | Command::Pencil => 256,
            Command::Locus | Command::Render => 512,
            Command::Search => 128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeParams {
    pub a: f64,
    pub b: f64,
    pub f: [f64; 2],
    pub g: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterAxes {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerEllipse {
    pub xc: f64,
    pub yc: f64,
    pub ac: f64,
    pub bc: f64,
    #[serde(default)]
    pub theta: f64,
}

/// Where the pair of ellipses comes from. Serializes to the same shapes the
/// pair file accepts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairSource {
    Named(NamedFamily),
    Blaschke { blaschke: BlaschkeParams },
    Explicit { outer: OuterAxes, inner: InnerEllipse },
}

impl PairSource {
    /// Parses a pair file: exactly one of `family`, `blaschke` or `outer`/`inner`.
    pub fn from_json(text: &str) -> CliResult<Self> {
        let value: Value = serde_json::from_str(text)?;
        let obj =
            value.as_object().ok_or_else(|| CliError::InvalidConfig("pair file must hold a JSON object".into()))?;
        let sources = [obj.contains_key("family"), obj.contains_key("blaschke"), obj.contains_key("outer")];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(CliError::InvalidConfig(
                "pair file needs exactly one of \"family\", \"blaschke\" or \"outer\"/\"inner\"".into(),
            ));
        }
        if sources[0] {
            return Ok(PairSource::Named(serde_json::from_value(value)?));
        }
        if sources[1] {
            if obj.len() != 1 {
                return Err(CliError::InvalidConfig("unexpected keys next to \"blaschke\"".into()));
            }
            return Ok(PairSource::Blaschke { blaschke: serde_json::from_value(obj["blaschke"].clone())? });
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Explicit {
            outer: OuterAxes,
            inner: InnerEllipse,
        }
        let e: Explicit = serde_json::from_value(value)?;
        Ok(PairSource::Explicit { outer: e.outer, inner: e.inner })
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn named(&self) -> Option<&NamedFamily> {
        match self {
            PairSource::Named(f) => Some(f),
            _ => None,
        }
    }

    /// Builds the family handle; fails with `InadmissiblePair` when the
    /// closure check does not pass.
    pub fn build(&self) -> CliResult<FamilyHandle> {
        match *self {
            PairSource::Named(family) => Ok(family.build()?),
            PairSource::Blaschke { blaschke: BlaschkeParams { a, b, f, g } } => {
                Ok(generic_pair(a, b, Complex64::new(f[0], f[1]), Complex64::new(g[0], g[1]))?)
            }
            PairSource::Explicit { outer, inner } => {
                if !(outer.a.is_finite() && outer.b > 0.0 && outer.a >= outer.b) {
                    return Err(CliError::InvalidConfig("outer ellipse needs a >= b > 0".into()));
                }
                let inner = EllipseSpec::try_new(PlanePoint::new(inner.xc, inner.yc), inner.ac, inner.bc, inner.theta)?;
                let pair = PairSpec::new(EllipseSpec::axis_aligned(outer.a, outer.b), inner)?;
                Ok(FamilyHandle::from_pair(pair)?)
            }
        }
    }
}

/// Fully resolved run request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub pair: PairSource,
    pub samples: usize,
    /// Overrides the command's default pass tolerance.
    pub tol: Option<f64>,
    pub circles: Vec<CircleKind>,
    pub triangle: Option<DerivedKind>,
    pub centers: Vec<CenterSpec>,
    pub ts: Vec<f64>,
    pub grid: usize,
    pub refine: bool,
    pub polygons: usize,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, pair: PairSource) -> Self {
        Self {
            command,
            pair,
            samples: command.default_samples(),
            tol: None,
            circles: Vec::new(),
            triangle: None,
            centers: Vec::new(),
            ts: Vec::new(),
            grid: 64,
            refine: true,
            polygons: 3,
            out: None,
            csv: None,
            svg: None,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let invalid = |msg: String| Err(CliError::InvalidConfig(msg));
        if self.command != Command::Render && self.samples < MIN_SAMPLES {
            return invalid(format!("--samples must be at least {MIN_SAMPLES}, got {}", self.samples));
        }
        if self.samples < 3 {
            return invalid("--samples must be at least 3".into());
        }
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return invalid(format!("--tol must be positive, got {tol}"));
            }
        }
        if self.grid < 2 {
            return invalid("--grid needs at least 2 nodes per side".into());
        }
        if self.ts.iter().any(|t| !t.is_finite()) {
            return invalid("--t values must be finite".into());
        }
        if self.command == Command::Render && self.svg.is_none() {
            return invalid("render needs --svg".into());
        }
        Ok(())
    }
}

/// Parses `re,im` (or a bare real) into `[re, im]`.
pub fn parse_complex(s: &str) -> CliResult<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |p: &str| p.parse::<f64>().map_err(|_| CliError::InvalidConfig(format!("bad number {p:?} in {s:?}")));
    match parts.as_slice() {
        [re] => Ok([parse(re)?, 0.0]),
        [re, im] => Ok([parse(re)?, parse(im)?]),
        _ => Err(CliError::InvalidConfig(format!("expected re,im, got {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_pair_shapes() {
        let named = PairSource::from_json(r#"{"family":"confocal","a":2,"b":1}"#).unwrap();
        assert_eq!(named, PairSource::Named(NamedFamily::Confocal { a: 2.0, b: 1.0 }));
        let bl = PairSource::from_json(r#"{"blaschke":{"a":1,"b":1,"f":[0.3,0],"g":[0.1,0.2]}}"#).unwrap();
        assert!(matches!(bl, PairSource::Blaschke { blaschke } if blaschke.g == [0.1, 0.2]));
        let ex = PairSource::from_json(
            r#"{"outer":{"a":1.5,"b":1.0},"inner":{"xc":0.1,"yc":0.05,"ac":0.5,"bc":0.3,"theta":0.2}}"#,
        )
        .unwrap();
        assert!(matches!(ex, PairSource::Explicit { inner, .. } if inner.theta == 0.2));
    }

    #[test]
    fn rejects_two_sources() {
        let err =
            PairSource::from_json(r#"{"family":"confocal","a":2,"b":1,"blaschke":{"a":1,"b":1,"f":[0,0],"g":[0,0]}}"#);
        assert!(matches!(err, Err(CliError::InvalidConfig(_))));
        assert!(matches!(PairSource::from_json("{}"), Err(CliError::InvalidConfig(_))));
    }

    #[test]
    fn serialized_source_round_trips() {
        for text in [
            r#"{"family":"homothetic","a":2.0,"b":1.0}"#,
            r#"{"blaschke":{"a":1.0,"b":1.0,"f":[0.3,0.0],"g":[0.1,0.2]}}"#,
        ] {
            let src = PairSource::from_json(text).unwrap();
            assert_eq!(serde_json::to_string(&src).unwrap(), text);
        }
    }

    #[test]
    fn explicit_nonclosing_pair_is_inadmissible() {
        let src = PairSource::from_json(
            r#"{"outer":{"a":1.5,"b":1.0},"inner":{"xc":0.1,"yc":0.05,"ac":0.5,"bc":0.3,"theta":0.2}}"#,
        )
        .unwrap();
        assert!(matches!(src.build(), Err(CliError::InadmissiblePair { .. })));
    }

    #[test]
    fn small_sample_counts_are_rejected() {
        let mut cfg = RunConfig::new(Command::Verify, PairSource::Named(NamedFamily::Homothetic { a: 2.0, b: 1.0 }));
        cfg.samples = 4;
        assert!(cfg.validate().is_err());
        cfg.samples = 8;
        cfg.validate().unwrap();
    }

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("0.1,0.2").unwrap(), [0.1, 0.2]);
        assert_eq!(parse_complex("-0.3").unwrap(), [-0.3, 0.0]);
        assert!(parse_complex("a,b").is_err());
    }
}
