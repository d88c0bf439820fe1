//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::connection::{
    curvature_check, flatness_conditions_check, random_regular_point, wronskian_check, ConnectionData, CurvatureOptions,
    Kappa,
};
use crate::error::{Error, Result};
use crate::hermitian::{
    det_closed_form, dual_form_signature, gram, in_hyperbolic_region, random_hyperbolic_kappa, reflection_matrices,
    relation_checks, signature, xy,
};
use crate::rational::{fmt_q, parse_q, Q};
use crate::residues::{boundary_spectrum, t_infinity_spectrum, t_zero_spectrum};
use crate::rootsystem::{Family, RootSystem};
use crate::schwarz::{enumerate_ball_quotients, schwarz_satisfied};
use crate::tables::{self, Format};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CURVATURE_TOLERANCE: f64 = 1e-9;
pub const WRONSKIAN_TOLERANCE: f64 = 1e-6;
const WRONSKIAN_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Md => Format::Md,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mirrorlat", version, about = "Flat connections on toric mirror arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Root system family, A to G.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Multiplicity on the first orbit, as `p/q`.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub k: Option<Q>,
    /// Second multiplicity (`b`-parameter for type A), as `p/q`.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub kp: Option<Q>,
    /// Fundamental coweight index, 1-based.
    #[arg(long)]
    pub node: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system data and the connection scalars.
    Info(Common),
    /// Exact check of the flatness conditions.
    Flatness(Common),
    /// Numeric curvature at random regular points.
    Curvature(Common),
    /// Finite-difference check of the Wronskian log-derivative.
    Wronskian(Common),
    /// Residue spectra at boundary divisors and at t = 0, ∞.
    Residues(Common),
    /// Hermitian form h(κ).
    Gram(Common),
    /// Signatures of h(κ) and its dual form.
    Signature(Common),
    /// Membership in the hyperbolic region, or random samples from it.
    HypRegion(Common),
    /// Schwarz conditions at κ.
    Schwarz(Common),
    /// Ball-quotient parameters of one type.
    Enumerate(Common),
    /// Regenerate table 1, 2 or 3.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Flatness(_) => "flatness",
            Command::Curvature(_) => "curvature",
            Command::Wronskian(_) => "wronskian",
            Command::Residues(_) => "residues",
            Command::Gram(_) => "gram",
            Command::Signature(_) => "signature",
            Command::HypRegion(_) => "hyp-region",
            Command::Schwarz(_) => "schwarz",
            Command::Enumerate(_) => "enumerate",
            Command::Tables { .. } => "tables",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Info(c)
            | Command::Flatness(c)
            | Command::Curvature(c)
            | Command::Wronskian(c)
            | Command::Residues(c)
            | Command::Gram(c)
            | Command::Signature(c)
            | Command::HypRegion(c)
            | Command::Schwarz(c)
            | Command::Enumerate(c) => c,
            Command::Tables { common, .. } => common,
        }
    }
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    let mut chars = s.chars();
    match (chars.next().and_then(Family::from_letter), chars.next()) {
        (Some(f), None) => Ok(f),
        _ => Err(format!("unknown family {s:?}; expected one of A, B, C, D, E, F, G")),
    }
}

fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::CheckFailed => 2,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Success
        } else {
            Outcome::CheckFailed
        }
    }
}

/// A serialized document and whether the checks it reports passed.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub document: String,
    pub outcome: Outcome,
}

fn root_system(c: &Common) -> Result<RootSystem> {
    let family = c.family.ok_or_else(|| Error::InvalidArgument("--family is required".into()))?;
    let rank = match c.rank {
        Some(r) => r,
        None => {
            let ranks = family.supported_ranks();
            if ranks.start() != ranks.end() {
                return Err(Error::InvalidArgument(format!("--rank is required for type {family}")));
            }
            *ranks.start()
        }
    };
    RootSystem::build(family, rank)
}

fn kappa(c: &Common, rs: &RootSystem) -> Result<Kappa> {
    let k = c.k.clone().ok_or_else(|| Error::InvalidArgument("--k is required".into()))?;
    let kappa = Kappa::new(k, c.kp.clone().unwrap_or_default());
    kappa.validate(rs.family())?;
    Ok(kappa)
}

fn kappa_json(kappa: &Kappa) -> Value {
    json!({"k": fmt_q(&kappa.k), "kp": fmt_q(&kappa.kp)})
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn envelope(command: &str, seed: u64, result: Value) -> String {
    let doc = json!({"tool_version": TOOL_VERSION, "seed": seed, "command": command, "result": result});
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

fn json_only(c: &Common, command: &str) -> Result<()> {
    if c.format != OutputFormat::Json {
        return Err(Error::InvalidArgument(format!("{command} only supports --format json")));
    }
    Ok(())
}

fn with_header(body: String, format: Format, command: &str, seed: u64) -> String {
    match format {
        Format::Md => format!("<!-- mirrorlat {TOOL_VERSION} command={command} seed={seed} -->\n{body}"),
        Format::Csv => format!("# mirrorlat {TOOL_VERSION} command={command} seed={seed}\n{body}"),
        Format::Json => body,
    }
}

/// Runs one command and returns its document; domain and usage errors are returned as `Err`.
pub fn run(command: &Command) -> Result<RunOutput> {
    let c = command.common();
    let name = command.name();
    if let Command::Tables { which, .. } = command {
        let format = Format::from(c.format);
        let document = match format {
            Format::Json => {
                let body: Value = serde_json::from_str(&tables::table(*which, format)?).expect("json");
                envelope(name, c.seed, json!({"which": which, "table": body}))
            }
            _ => with_header(tables::table(*which, format)?, format, name, c.seed),
        };
        return Ok(RunOutput { document, outcome: Outcome::Success });
    }
    let rs = root_system(c)?;
    if let Command::Enumerate(_) = command {
        let entries = enumerate_ball_quotients(&rs);
        let format = Format::from(c.format);
        let document = match format {
            Format::Json => envelope(name, c.seed, to_value(&entries)),
            Format::Md => with_header(tables::ball_quotients_markdown(&entries), format, name, c.seed),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["type", "n", "k", "p", "k'", "p'"]).expect("csv");
                for e in &entries {
                    w.write_record([
                        e.family.to_string(),
                        e.rank.to_string(),
                        fmt_q(&e.k),
                        e.p.to_string(),
                        e.kp.as_ref().map(fmt_q).unwrap_or_default(),
                        e.pp.map(|x| x.to_string()).unwrap_or_default(),
                    ])
                    .expect("csv");
                }
                with_header(String::from_utf8(w.into_inner().expect("csv")).expect("utf8"), format, name, c.seed)
            }
        };
        return Ok(RunOutput { document, outcome: Outcome::Success });
    }
    json_only(c, name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let (result, pass) = match command {
        Command::Info(_) => {
            let r = json!({
                "root_system": rs.label(),
                "rank": rs.rank(),
                "positive_roots": rs.positive_roots().len(),
                "coxeter_number": rs.coxeter_number(),
                "highest_root": rs.highest_root().coeffs,
                "cartan": rs.cartan(),
                "affine_coxeter_matrix": rs.affine_coxeter_matrix(),
                "connection": to_value(&ConnectionData::new(&rs)),
            });
            (r, true)
        }
        Command::Flatness(_) => {
            let report = flatness_conditions_check(&rs, &kappa(c, &rs)?);
            let pass = report.all_hold();
            (to_value(&report), pass)
        }
        Command::Curvature(_) => {
            let kappa = kappa(c, &rs)?;
            let reports: Vec<_> = (0..c.samples)
                .map(|_| {
                    let point = random_regular_point(&rs, &mut rng);
                    let report = curvature_check(&rs, &kappa, &point, &CurvatureOptions::default());
                    let z: Vec<[f64; 2]> = point.coords().iter().map(|w| [w.re, w.im]).collect();
                    (z, report)
                })
                .collect();
            let max = reports.iter().map(|(_, r)| r.residual.max(r.projective_residual)).fold(0.0, f64::max);
            let r = json!({
                "kappa": kappa_json(&kappa),
                "tolerance": CURVATURE_TOLERANCE,
                "max_residual": max,
                "points": reports.iter().map(|(z, r)| json!({"z": z, "report": r})).collect::<Vec<_>>(),
            });
            (r, max < CURVATURE_TOLERANCE)
        }
        Command::Wronskian(_) => {
            let kappa = kappa(c, &rs)?;
            let mut points = Vec::new();
            let mut max = 0.0f64;
            for _ in 0..c.samples {
                let point = random_regular_point(&rs, &mut rng);
                let dir: Vec<f64> = (0..rs.rank()).map(|_| rng.random_range(-1.0..1.0)).collect();
                let report = wronskian_check(&rs, &kappa, &point, &dir, WRONSKIAN_STEP)?;
                max = max.max(report.relative_error);
                let z: Vec<[f64; 2]> = point.coords().iter().map(|w| [w.re, w.im]).collect();
                points.push(json!({"z": z, "direction": dir, "report": report}));
            }
            let r = json!({
                "kappa": kappa_json(&kappa),
                "tolerance": WRONSKIAN_TOLERANCE,
                "max_relative_error": max,
                "points": points,
            });
            (r, max < WRONSKIAN_TOLERANCE)
        }
        Command::Residues(_) => {
            let nodes: Vec<usize> = match c.node {
                Some(m) => vec![m],
                None => (1..=rs.rank()).collect(),
            };
            let mut spectra = Vec::new();
            for m in nodes {
                spectra.push(to_value(&boundary_spectrum(&rs, m)?));
            }
            if c.node.is_none() {
                spectra.push(to_value(&t_zero_spectrum(&rs)));
                spectra.push(to_value(&t_infinity_spectrum(&rs)));
            }
            (json!({"root_system": rs.label(), "spectra": spectra}), true)
        }
        Command::Gram(_) => {
            let kappa = kappa(c, &rs)?;
            let g = gram(&rs, &kappa)?;
            let relations = relation_checks(&reflection_matrices(&g));
            let xy = xy(&rs, &kappa).map(|(x, y)| json!({"x": fmt_q(&x), "y": fmt_q(&y)}));
            let r = json!({
                "root_system": rs.label(),
                "gram": to_value(&g),
                "det": g.det(),
                "det_closed_form": det_closed_form(&rs, &kappa),
                "xy": xy,
                "relations": {
                    "braid": relations.max_braid(),
                    "quadratic": relations.max_quadratic(),
                    "invariance": relations.max_invariance(),
                    "determinant": relations.max_determinant(),
                },
            });
            (r, true)
        }
        Command::Signature(_) => {
            let kappa = kappa(c, &rs)?;
            let g = gram(&rs, &kappa)?;
            let dual = dual_form_signature(&g).ok();
            let r = json!({
                "root_system": rs.label(),
                "kappa": kappa_json(&kappa),
                "signature": signature(&g),
                "dual_signature": dual,
                "hyperbolic": in_hyperbolic_region(&rs, &kappa),
            });
            (r, true)
        }
        Command::HypRegion(_) => {
            let r = match c.k {
                Some(_) => {
                    let kappa = kappa(c, &rs)?;
                    let xy = xy(&rs, &kappa).map(|(x, y)| json!({"x": fmt_q(&x), "y": fmt_q(&y)}));
                    json!({
                        "kappa": kappa_json(&kappa),
                        "restricted": kappa.in_restricted_region(&rs),
                        "hyperbolic": in_hyperbolic_region(&rs, &kappa),
                        "xy": xy,
                    })
                }
                None => {
                    let samples: Vec<Value> =
                        (0..c.samples).map(|_| kappa_json(&random_hyperbolic_kappa(&rs, &mut rng))).collect();
                    json!({"root_system": rs.label(), "samples": samples})
                }
            };
            (r, true)
        }
        Command::Schwarz(_) => {
            let report = schwarz_satisfied(&rs, &kappa(c, &rs)?);
            let pass = report.satisfied;
            (to_value(&report), pass)
        }
        Command::Enumerate(_) | Command::Tables { .. } => unreachable!("handled above"),
    };
    Ok(RunOutput { document: envelope(name, c.seed, result), outcome: Outcome::from_pass(pass) })
}
