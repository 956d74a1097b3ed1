//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{Vec3, Window};
use crate::io::{read_points, read_translate_set, read_zonotope, to_json};
use crate::spectral::{leg_ft, zero_set_member, LegMeasure};
use crate::structure::{classify, intersection_property, two_flat};
use crate::tiling::{verify_level, Slab};
use crate::weird::{build_construction, build_weird};
use crate::zonotope::{export_off, frames, pave, Zonotope};

pub const DEFAULT_WINDOW: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Frames,
    CheckIntersection,
    Pave,
    VerifyTiling { translates: PathBuf },
    WeirdGen { t_cosets: Vec<i64> },
    FourierEval { points: PathBuf },
    ExportMesh,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub zonotope: PathBuf,
    pub window: Option<Window>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub precision: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, zonotope: impl Into<PathBuf>) -> Self {
        RunConfig { command, zonotope: zonotope.into(), window: None, samples: 10_000, seed: 0, tol: 1e-9, precision: 6, out: None }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Invalid("--samples must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Invalid("--tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub output: String,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremContradiction(_) => 1,
        _ => 2,
    }
}

/// Runs one command. The report goes to `out` when set and is always
/// returned.
pub fn run(config: &RunConfig) -> RunOutcome {
    let (code, output) = match config.validate().and_then(|_| execute(config)) {
        Ok(r) => r,
        Err(e) => (exit_code(&e), to_json(&json!({ "error": e.to_string() }))),
    };
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &output) {
            return RunOutcome { code: 2, output: to_json(&json!({ "error": format!("{}: {e}", path.display()) })) };
        }
    }
    RunOutcome { code, output }
}

#[derive(Serialize)]
struct PaveReport<'a> {
    paving: &'a crate::zonotope::Paving,
    #[serde(with = "crate::exact::rational_str")]
    cell_volume: crate::exact::Rational,
    #[serde(with = "crate::exact::rational_str")]
    zonotope_volume: crate::exact::Rational,
    consistent: bool,
}

#[derive(Serialize)]
struct FourierValue {
    frame: usize,
    re: f64,
    im: f64,
    abs: f64,
    /// `abs <= tol`
    numerically_zero: bool,
    zero_set_member: bool,
}

#[derive(Serialize)]
struct FourierPoint {
    xi: Vec3,
    values: Vec<FourierValue>,
    in_every_zero_set: bool,
}

fn execute(config: &RunConfig) -> Result<(i32, String)> {
    let z: Zonotope = read_zonotope(&read(&config.zonotope)?)?;
    let ok = |s: String| Ok((0, s));
    match &config.command {
        Command::Classify => ok(to_json(&classify(&z)?)),
        Command::Frames => ok(to_json(&frames(&z))),
        Command::CheckIntersection => {
            let fl = frames(&z);
            let v = intersection_property(&fl.frames)?;
            ok(to_json(&json!({ "intersection": v, "two_flat": two_flat(&z), "frame_count": fl.frames.len() })))
        }
        Command::Pave => {
            let p = pave(&z);
            let cell_volume = p.volume();
            let zonotope_volume = z.volume();
            let consistent = cell_volume == zonotope_volume;
            let report = PaveReport { paving: &p, cell_volume, zonotope_volume, consistent };
            Ok((if consistent { 0 } else { 1 }, to_json(&report)))
        }
        Command::VerifyTiling { translates } => {
            let lam = read_translate_set(&read(translates)?)?;
            let window = config.window.clone().unwrap_or_else(|| Window::cube(DEFAULT_WINDOW));
            let r = verify_level(&z, &lam, &window, config.samples, config.seed)?;
            let pass = r.level.is_some() && r.density_consistent == Some(true);
            Ok((if pass { 0 } else { 1 }, to_json(&r)))
        }
        Command::WeirdGen { t_cosets } => {
            let c = build_construction(&z, &two_flat(&z))?;
            let choice: BTreeMap<i64, Slab> = t_cosets.iter().map(|j| (*j, Slab::T)).collect();
            let lam = build_weird(&c, choice)?;
            let points = config.window.as_ref().map(|w| {
                lam.points_in_box(w).into_iter().map(|(p, m)| json!({ "point": p, "multiplicity": m })).collect::<Vec<_>>()
            });
            ok(to_json(&json!({ "construction": c, "translate_set": lam, "points": points })))
        }
        Command::FourierEval { points } => {
            let xis = read_points(&read(points)?)?;
            let fl = frames(&z).frames;
            let measures: Vec<LegMeasure> = fl.iter().cloned().map(LegMeasure::new).collect();
            let report = xis
                .into_iter()
                .map(|xi| {
                    let xf = xi.to_f64();
                    let values = measures
                        .iter()
                        .enumerate()
                        .map(|(i, m)| {
                            let v = leg_ft(m, xf)?;
                            Ok(FourierValue {
                                frame: i,
                                re: v.re,
                                im: v.im,
                                abs: v.norm(),
                                numerically_zero: v.norm() <= config.tol,
                                zero_set_member: zero_set_member(&m.frame, &xi),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let in_every_zero_set = values.iter().all(|v| v.zero_set_member);
                    Ok(FourierPoint { xi, values, in_every_zero_set })
                })
                .collect::<Result<Vec<_>>>()?;
            ok(to_json(&report))
        }
        Command::ExportMesh => ok(export_off(&z, config.precision)),
    }
}

#[derive(Parser, Debug)]
#[command(name = "zonotile", version, about = "Exact multiple-tiling analysis of 3D zonotopes")]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
    /// Sampling window "x0 x1 y0 y1 z0 z1" (rationals allowed)
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Fractional digits in mesh output
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Two-flatness, intersection property and the resulting verdict
    Classify { zonotope: PathBuf },
    /// All 4-legged frames
    Frames { zonotope: PathBuf },
    /// Intersection property with witness and certificate
    CheckIntersection { zonotope: PathBuf },
    /// Half-open parallelepiped paving
    Pave { zonotope: PathBuf },
    /// Coverage level of a translate set over a window
    VerifyTiling { zonotope: PathBuf, translates: PathBuf },
    /// Coset slab construction for a two-flat zonotope
    WeirdGen {
        zonotope: PathBuf,
        /// Coset indices using T (all others use S)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        t_cosets: Vec<i64>,
    },
    /// Leg-measure transforms at the given points
    FourierEval { zonotope: PathBuf, points: PathBuf },
    /// OFF mesh of the boundary
    ExportMesh { zonotope: PathBuf },
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, zonotope) = match self.command {
            CliCommand::Classify { zonotope } => (Command::Classify, zonotope),
            CliCommand::Frames { zonotope } => (Command::Frames, zonotope),
            CliCommand::CheckIntersection { zonotope } => (Command::CheckIntersection, zonotope),
            CliCommand::Pave { zonotope } => (Command::Pave, zonotope),
            CliCommand::VerifyTiling { zonotope, translates } => (Command::VerifyTiling { translates }, zonotope),
            CliCommand::WeirdGen { zonotope, t_cosets } => (Command::WeirdGen { t_cosets }, zonotope),
            CliCommand::FourierEval { zonotope, points } => (Command::FourierEval { points }, zonotope),
            CliCommand::ExportMesh { zonotope } => (Command::ExportMesh, zonotope),
        };
        Ok(RunConfig {
            command,
            zonotope,
            window: self.window.as_deref().map(Window::parse).transpose()?,
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            precision: self.precision,
            out: self.out,
        })
    }
}

/// Parses arguments, runs, prints the report unless `--out` is given, and
/// returns the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let outcome = run(&config);
    if config.out.is_none() || outcome.code == 2 {
        print!("{}", outcome.output);
    }
    outcome.code
}
