use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand};
use poncelet_cli::config::{parse_complex, BlaschkeParams, Command, PairSource, RunConfig};
use poncelet_cli::error::{CliError, CliResult, EXIT_ERROR, EXIT_FAILED};
use poncelet_cli::report::{timing_path, write_text, Timing};
use poncelet_cli::run_suite;
use poncelet_core::centers::{CenterSpec, CircleKind, DerivedKind};
use poncelet_core::engine::NamedFamily;

/// Poncelet 3-periodic families between nested ellipses: invariant powers,
/// center loci and stationary-point experiments.
#[derive(Debug, Parser)]
#[command(name = "poncelet", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check that the power of the center is constant over the family.
    Verify(RunArgs),
    /// Sample center loci, fit conics and compare with the closed form.
    Locus(RunArgs),
    /// Look for points of constant power with respect to a family circle.
    Search(RunArgs),
    /// Scan the pencil spanned by the circumcircle and the Euler circle.
    Pencil(RunArgs),
    /// Draw the pair, a few triangles, circles and loci as SVG.
    Render(RunArgs),
    /// List the named families and their parameters.
    Families {
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Pair file (JSON).
    #[arg(long)]
    pair: Option<PathBuf>,
    /// Named family, or `blaschke` for a pair given by (a, b, f, g).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    ac: Option<f64>,
    #[arg(long)]
    bc: Option<f64>,
    /// First focus of the Blaschke caustic, `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Second focus of the Blaschke caustic, `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Family samples (defaults depend on the command).
    #[arg(long)]
    samples: Option<usize>,
    /// Pass tolerance of the command's checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Family circles, comma separated.
    #[arg(long, value_delimiter = ',')]
    circle: Vec<String>,
    /// Replace each 3-periodic by this derived triangle.
    #[arg(long)]
    triangle: Option<String>,
    /// Tracked center: `X5`, `gamma:-0.5` or `combo:ar,ai,br,bi`. Repeatable.
    #[arg(long)]
    center: Vec<String>,
    /// Pencil parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    t: Vec<f64>,
    /// Search grid nodes per side.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Refine the grid minimum with Nelder-Mead.
    #[arg(long, action = ArgAction::Set, default_value_t = true, num_args = 0..=1, default_missing_value = "true")]
    refine: bool,
    /// Triangles drawn in SVG output.
    #[arg(long, default_value_t = 3)]
    polygons: usize,
    /// Report path (JSON); printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::InvalidConfig(msg.into()))
}

impl PairArgs {
    fn source(&self) -> CliResult<PairSource> {
        let numeric = [("a", self.a), ("b", self.b), ("r", self.r), ("ac", self.ac), ("bc", self.bc)];
        let given: Vec<&str> = numeric
            .iter()
            .filter(|(_, v)| v.is_some())
            .map(|(k, _)| *k)
            .chain(self.f.as_ref().map(|_| "f"))
            .chain(self.g.as_ref().map(|_| "g"))
            .collect();
        let family = match (&self.pair, &self.family) {
            (Some(_), Some(_)) => return invalid("give either --pair or --family, not both"),
            (None, None) => return invalid("no pair given: use --pair FILE or --family NAME"),
            (Some(path), None) => {
                if !given.is_empty() {
                    return invalid(format!("--{} cannot be combined with --pair", given[0]));
                }
                return PairSource::from_file(path);
            }
            (None, Some(family)) => family.as_str(),
        };
        let allowed: &[&str] = match family {
            "incircle" | "homothetic" | "confocal" | "excentral" => &["a", "b"],
            "circumcircle" => &["r", "ac"],
            "concentric_tilted" => &["a", "b", "ac", "bc"],
            "blaschke" => &["a", "b", "f", "g"],
            other => {
                return invalid(format!(
                    "unknown family {other:?}; expected one of {}, blaschke",
                    NamedFamily::NAMES.join(", ")
                ))
            }
        };
        if let Some(extra) = given.iter().find(|k| !allowed.contains(k)) {
            return invalid(format!("--{extra} does not apply to the {family} family"));
        }
        if let Some(missing) = allowed.iter().find(|k| !given.contains(k)) {
            return invalid(format!("the {family} family needs --{missing}"));
        }
        let [a, b, r, ac, bc] = numeric.map(|(_, v)| v.unwrap_or(f64::NAN));
        Ok(match family {
            "incircle" => PairSource::Named(NamedFamily::Incircle { a, b }),
            "homothetic" => PairSource::Named(NamedFamily::Homothetic { a, b }),
            "confocal" => PairSource::Named(NamedFamily::Confocal { a, b }),
            "excentral" => PairSource::Named(NamedFamily::Excentral { a, b }),
            "circumcircle" => PairSource::Named(NamedFamily::Circumcircle { r, ac }),
            "concentric_tilted" => PairSource::Named(NamedFamily::ConcentricTilted { a, b, ac, bc }),
            _ => {
                let f = parse_complex(self.f.as_deref().unwrap_or_default())?;
                let g = parse_complex(self.g.as_deref().unwrap_or_default())?;
                PairSource::Blaschke { blaschke: BlaschkeParams { a, b, f, g } }
            }
        })
    }
}

impl RunArgs {
    fn into_config(self, command: Command) -> CliResult<RunConfig> {
        let mut config = RunConfig::new(command, self.pair.source()?);
        if let Some(n) = self.samples {
            config.samples = n;
        }
        config.tol = self.tol;
        config.circles = self
            .circle
            .iter()
            .map(|s| {
                CircleKind::parse(s.trim()).ok_or_else(|| CliError::InvalidConfig(format!("unknown circle {s:?}")))
            })
            .collect::<CliResult<_>>()?;
        config.triangle = match self.triangle.as_deref() {
            Some(s) => Some(
                DerivedKind::parse(s)
                    .ok_or_else(|| CliError::InvalidConfig(format!("unknown derived triangle {s:?}")))?,
            ),
            None => None,
        };
        config.centers = self
            .center
            .iter()
            .map(|s| CenterSpec::parse(s).ok_or_else(|| CliError::InvalidConfig(format!("unknown center {s:?}"))))
            .collect::<CliResult<_>>()?;
        config.ts = self.t;
        config.grid = self.grid;
        config.refine = self.refine;
        config.polygons = self.polygons;
        config.out = self.out;
        config.csv = self.csv;
        config.svg = self.svg;
        Ok(config)
    }
}

fn list_families() {
    let rows = [
        ("incircle", "--a --b"),
        ("circumcircle", "--r --ac"),
        ("homothetic", "--a --b"),
        ("confocal", "--a --b"),
        ("excentral", "--a --b"),
        ("concentric_tilted", "--a --b --ac --bc"),
        ("blaschke", "--a --b --f re,im --g re,im"),
    ];
    for (name, params) in rows {
        println!("{name:<18} {params}");
    }
}

fn run(command: Command, args: RunArgs) -> CliResult<bool> {
    let start = Instant::now();
    let config = args.into_config(command)?;
    let report = run_suite(&config)?;
    let json = report.to_json();
    match &config.out {
        Some(path) => {
            write_text(path, &json)?;
            let timing = Timing { wall_time_s: start.elapsed().as_secs_f64() };
            let timing_json = serde_json::to_string_pretty(&timing).expect("timing serializes") + "\n";
            write_text(&timing_path(path), &timing_json)?;
        }
        None => print!("{json}"),
    }
    eprint!("{}", report.summary());
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Families { .. } => {
            list_families();
            return ExitCode::SUCCESS;
        }
        Cmd::Verify(args) => (Command::Verify, args),
        Cmd::Locus(args) => (Command::Locus, args),
        Cmd::Search(args) => (Command::Search, args),
        Cmd::Pencil(args) => (Command::Pencil, args),
        Cmd::Render(args) => (Command::Render, args),
    };
    match run(command, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
