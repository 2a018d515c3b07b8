//! The `mvmeasure` command line.

mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::convex::{ConvexBody, EPS_GEOM};
use crate::error::Error;
use crate::examples::{
    make_ball_pair, make_interval_mm, make_interval_pair, make_range_mm, random_scenario, BallData, BodyKind,
    Profile,
};
use crate::integral::{aumann_integrate, bds_integrate, SelectionStrategy};
use crate::measure::{Event, FiniteMeasurableSpace, MeasurableFunction, SignedMeasure};
use crate::multimeasure::AtomKind;
use crate::radstrom::{default_direction_count, embed, embedded_rn_residual, DirectionSet};
use crate::rn::{self, CheckConfig, ConditionReport};
use crate::scenario::{self, DirectionSpec, Scenario, ScenarioError, ScenarioFile};
use crate::selftest;

const DEFAULT_BUDGET: usize = 10_000;
const DEFAULT_EVENT_CAP: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "mvmeasure", version, about = "Multimeasures, BDS_m integrals and Radon-Nikodym derivatives on finite spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Seed for sampled directions and functionals.
    #[arg(long, global = true, env = "MVMEASURE_SEED")]
    pub seed: Option<u64>,
    /// Number of directions (at least 2d).
    #[arg(long, global = true)]
    pub directions: Option<usize>,
    /// Functional tuples per condition check.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Largest atom count for exhaustive event enumeration.
    #[arg(long = "event-cap", global = true)]
    pub event_cap: Option<usize>,
    /// Geometric tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Also draw the resulting 1-D/2-D bodies as SVG.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check bodies, event-table additivity, and classify atoms.
    Validate,
    /// BDS_m integral of a function against a multimeasure.
    Integrate {
        #[arg(long)]
        function: String,
        #[arg(long, default_value = "N")]
        mm: String,
        /// Comma-separated atom labels (default: all atoms).
        #[arg(long, value_delimiter = ',')]
        event: Option<Vec<String>>,
        /// Compare with the vertex-enumeration selection integral.
        #[arg(long)]
        aumann: bool,
    },
    /// Radon-Nikodym derivative dM/dN.
    Derive {
        #[arg(long, default_value = "M")]
        m: String,
        #[arg(long, default_value = "N")]
        n: String,
        /// Report the bands of |theta|.
        #[arg(long)]
        local: bool,
        /// Run the sign audit and the embedded residual.
        #[arg(long)]
        audit: bool,
    },
    /// Check a domination condition of M with respect to N.
    Check {
        #[arg(long, default_value = "M")]
        m: String,
        #[arg(long, default_value = "N")]
        n: String,
        #[arg(long, value_enum)]
        condition: ConditionArg,
        /// Constant for uss, s-uss and sub (default: usd constant + 1, twice the s-usd constant + 1, or 1 for sub).
        #[arg(long)]
        d: Option<f64>,
        /// Longest span for the strong conditions.
        #[arg(long = "m-max", default_value_t = 3)]
        m_max: usize,
        /// Sign set A as comma-separated labels (default: searched).
        #[arg(long = "sign-set", value_delimiter = ',')]
        sign_set: Option<Vec<String>>,
        /// Epsilon grid for usac and s-usac.
        #[arg(long, value_delimiter = ',')]
        epsilon: Option<Vec<f64>>,
    },
    /// Support-function embedding of the atoms and of M(E).
    Embed {
        #[arg(long, default_value = "N")]
        mm: String,
        #[arg(long, value_delimiter = ',')]
        event: Option<Vec<String>>,
    },
    /// Scenario file utilities.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Randomized agreement suite for derive, usd, usac and uss.
    Selftest {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioAction {
    /// Emit a scenario file.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long)]
        dim: Option<usize>,
        /// Body kind for random scenarios.
        #[arg(long, value_enum, default_value_t = BodyArg::Polytope)]
        body: BodyArg,
        /// Draw M independently of N instead of planting a derivative.
        #[arg(long)]
        independent: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    Usd,
    Usac,
    Uss,
    #[value(name = "s-usd")]
    SUsd,
    #[value(name = "s-usac")]
    SUsac,
    #[value(name = "s-uss")]
    SUss,
    Sub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Interval,
    IntervalPair,
    BallPair,
    Range,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BodyArg {
    Polytope,
    Ball,
}

/// Outcome class, mapped to the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Invalid,
    Negative,
    Inconsistent,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 2,
            Status::Negative => 3,
            Status::Inconsistent => 4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub tol: f64,
    pub event_cap: usize,
    pub directions: usize,
    pub budget: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub settings: Option<Settings>,
    pub status: Status,
    pub result: Value,
}

struct Outcome {
    status: Status,
    result: Value,
    drawing: Vec<(String, ConvexBody)>,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            status: Status::Ok,
            result,
            drawing: Vec::new(),
        }
    }
}

/// Errors that end a command early.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Math(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// Loaded scenario with resolved settings.
struct Context {
    scenario: Scenario,
    dirs: DirectionSet,
    settings: Settings,
    seed: u64,
    digest: String,
}

impl Context {
    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            dirs: self.dirs.clone(),
            budget: self.settings.budget,
            seed: self.seed,
            event_cap: self.settings.event_cap,
            tol: self.settings.tol,
        }
    }
}

fn load(g: &Global) -> Result<Context, Failure> {
    let path = g
        .scenario
        .as_ref()
        .ok_or_else(|| Failure::Usage("this command needs --scenario <path>".into()))?;
    let bytes = std::fs::read(path).map_err(|source| Failure::Io {
        path: path.clone(),
        source,
    })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8_lossy(&bytes);
    let file = scenario::parse(&text)?;
    let dim = file.dimension.max(1);
    let spec = file.directions.clone();
    let seed = g.seed.or(spec.as_ref().map(|d| d.seed)).unwrap_or(0);
    let count = g
        .directions
        .or(spec.as_ref().map(|d| d.count))
        .unwrap_or_else(|| default_direction_count(dim));
    let dirs = DirectionSet::low_discrepancy(dim, count, seed)?;
    let tol = g.tol.or(file.tolerance).unwrap_or(EPS_GEOM);
    if tol.is_nan() || tol < 0.0 {
        return Err(Failure::Usage("--tol must be ≥ 0".into()));
    }
    let settings = Settings {
        tol,
        event_cap: g.event_cap.or(file.event_cap).unwrap_or(DEFAULT_EVENT_CAP),
        directions: dirs.len(),
        budget: g.budget.unwrap_or(DEFAULT_BUDGET),
    };
    let scenario = file.build(&dirs, tol)?;
    Ok(Context {
        scenario,
        dirs,
        settings,
        seed,
        digest,
    })
}

fn labels(space: &FiniteMeasurableSpace, e: &Event) -> Vec<String> {
    e.iter().map(|i| space.label(i).to_string()).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn kind_name(k: AtomKind) -> &'static str {
    match k {
        AtomKind::Null => "null",
        AtomKind::Point => "point",
        AtomKind::Set => "set",
    }
}

fn validate(ctx: &Context) -> Outcome {
    let sc = &ctx.scenario;
    let mut mms = serde_json::Map::new();
    for (name, mm) in &sc.multimeasures {
        let c = mm.classify(ctx.settings.tol);
        let h = &c.pointless_part;
        let summary = if h.len() == sc.space.len() {
            "pointless, H=Ω".to_string()
        } else if h.is_empty() {
            "vector measure, H=∅".to_string()
        } else {
            format!("mixed, H={{{}}}", labels(&sc.space, h).join(","))
        };
        let kinds: serde_json::Map<String, Value> = c
            .kinds
            .iter()
            .enumerate()
            .map(|(i, k)| (sc.space.label(i).to_string(), json!(kind_name(*k))))
            .collect();
        let source = if sc.event_tables.contains(name) {
            "event table (additive)"
        } else {
            "atoms"
        };
        mms.insert(
            name.clone(),
            json!({
                "source": source,
                "kinds": kinds,
                "pointless_part": labels(&sc.space, h),
                "classification": summary,
            }),
        );
    }
    let drawing = sc
        .multimeasures
        .iter()
        .flat_map(|(name, mm)| {
            mm.atoms()
                .iter()
                .enumerate()
                .map(move |(i, b)| (format!("{name}({})", i + 1), b.clone()))
        })
        .collect();
    Outcome {
        status: Status::Ok,
        result: json!({
            "space": sc.space.labels(),
            "dimension": sc.dim,
            "multimeasures": mms,
            "functions": sc.functions.keys().collect::<Vec<_>>(),
        }),
        drawing,
    }
}

fn integrate(ctx: &Context, function: &str, mm: &str, event: Option<&[String]>, aumann: bool) -> Result<Outcome, Failure> {
    let sc = &ctx.scenario;
    let (f, n, e) = (sc.function(function)?, sc.multimeasure(mm)?, sc.event(event)?);
    let r = bds_integrate(f, n, &e, &ctx.dirs)?;
    let mut result = json!({
        "function": function,
        "multimeasure": mm,
        "event": labels(&sc.space, &e),
        "body": r.body,
        "residual": r.residual,
        "table": r.table,
    });
    if aumann {
        let a = aumann_integrate(f, n, &e, SelectionStrategy::VertexEnumeration)?;
        let h = crate::convex::hausdorff(&a, &r.body)?;
        result["aumann"] = json!({ "body": a, "distance": h.distance, "exact": h.exact });
    }
    Ok(Outcome {
        status: Status::Ok,
        result,
        drawing: vec![(format!("∫{function} d{mm}"), r.body)],
    })
}

fn error_value(space: &FiniteMeasurableSpace, e: &Error) -> Value {
    let label = |i: &usize| space.label(*i).to_string();
    match e {
        Error::NoDerivative {
            atom,
            best_c,
            residual,
            reason,
        } => json!({
            "kind": "no_derivative", "atom": label(atom), "best_c": best_c,
            "residual": residual, "reason": reason, "message": e.to_string(),
        }),
        Error::NotAbsolutelyContinuous { atom } => json!({
            "kind": "not_absolutely_continuous", "atom": label(atom), "message": e.to_string(),
        }),
        Error::Consistency { atoms } => json!({
            "kind": "inconsistent", "atoms": atoms.iter().map(label).collect::<Vec<_>>(),
            "message": e.to_string(),
        }),
        other => json!({ "kind": "error", "message": other.to_string() }),
    }
}

fn derive(ctx: &Context, m_name: &str, n_name: &str, local: bool, audit: bool) -> Result<Outcome, Failure> {
    let sc = &ctx.scenario;
    let (m, n) = (sc.multimeasure(m_name)?, sc.multimeasure(n_name)?);
    let tol = ctx.settings.tol;
    let attempt = if local {
        rn::derive_local(m, n, &ctx.dirs, tol)
    } else {
        rn::derive(m, n, &ctx.dirs, tol)
    };
    match attempt {
        Ok(cert) => {
            let mut result = json!({
                "m": m_name,
                "n": n_name,
                "certificate": cert,
                "sign_set_labels": labels(&sc.space, &cert.sign_set),
            });
            if audit {
                let a = rn::positivity_audit(&cert, m, n, &ctx.dirs, tol)?;
                let emb = embedded_rn_residual(m, n, &cert.theta, &ctx.dirs, &sc.space.full())?;
                result["audit"] = json!({ "positivity": a, "embedded_residual": emb });
            }
            let drawing = (0..sc.space.len())
                .flat_map(|i| {
                    [
                        (format!("{m_name}({})", i + 1), m.atom(i).clone()),
                        (format!("{n_name}({})", i + 1), n.atom(i).clone()),
                    ]
                })
                .collect();
            Ok(Outcome {
                status: Status::Ok,
                result,
                drawing,
            })
        }
        Err(e @ (Error::NoDerivative { .. } | Error::NotAbsolutelyContinuous { .. } | Error::Consistency { .. })) => {
            let mut result = json!({ "m": m_name, "n": n_name, "error": error_value(&sc.space, &e) });
            if matches!(e, Error::NoDerivative { .. }) {
                let full = sc.space.full();
                if let Ok(s) = rn::sub_containment(m, n, 1.0, &full, &ctx.dirs, ctx.settings.event_cap, tol) {
                    result["sub_containment"] = json!({
                        "d": 1.0,
                        "event": labels(&sc.space, &full),
                        "contained": s.contained,
                        "note": if s.contained {
                            "M(Ω) lies in aco ℛ(N_Ω) although no derivative exists"
                        } else {
                            "M(Ω) is not contained in aco ℛ(N_Ω)"
                        },
                    });
                }
            }
            Ok(Outcome {
                status: Status::Negative,
                result,
                drawing: Vec::new(),
            })
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn check(
    ctx: &Context,
    m_name: &str,
    n_name: &str,
    condition: ConditionArg,
    d: Option<f64>,
    m_max: usize,
    sign_set: Option<&[String]>,
    epsilon: Option<&[f64]>,
) -> Result<Outcome, Failure> {
    let sc = &ctx.scenario;
    let (m, n) = (sc.multimeasure(m_name)?, sc.multimeasure(n_name)?);
    let cfg = ctx.check_config();
    let a = sign_set.map(|ls| sc.event(Some(ls))).transpose()?;
    let eps = epsilon.unwrap_or(&selftest::EPSILONS);
    if m_max == 0 {
        return Err(Failure::Usage("--m-max must be at least 1".into()));
    }
    let mut status = Status::Ok;
    let mut extra = serde_json::Map::new();
    let report: ConditionReport = match condition {
        ConditionArg::Usd => rn::check_usd(m, n, a.as_ref(), &cfg)?,
        ConditionArg::Usac => {
            let r = rn::check_usac(m, n, a.as_ref(), eps, &cfg)?;
            let usd = rn::check_usd(m, n, a.as_ref(), &cfg)?;
            if usd.verdict.holds() != r.verdict.holds() {
                status = Status::Inconsistent;
            }
            extra.insert("usd_agrees".into(), json!(usd.verdict.holds() == r.verdict.holds()));
            r
        }
        ConditionArg::Uss => {
            let d = match d {
                Some(d) => d,
                None => rn::check_usd(m, n, a.as_ref(), &cfg)?.empirical_constant + 1.0,
            };
            rn::check_uss(m, n, a.as_ref(), d, &cfg)?
        }
        ConditionArg::SUsd => rn::check_susd(m, n, m_max, &cfg)?,
        ConditionArg::SUsac => rn::check_susac(m, n, m_max, eps, &cfg)?,
        ConditionArg::SUss => {
            let d = match d {
                Some(d) => d,
                // one-sided hull is at least half the variation
                None => 2.0 * rn::check_susd(m, n, m_max, &cfg)?.empirical_constant + 1.0,
            };
            rn::check_suss(m, n, m_max, d, &cfg)?
        }
        ConditionArg::Sub => rn::check_sub(m, n, d.unwrap_or(1.0), &cfg)?,
    };
    if status == Status::Ok && !report.verdict.holds() {
        status = Status::Negative;
    }
    let mut result = json!({ "m": m_name, "n": n_name, "report": report,
        "sign_set_labels": labels(&sc.space, &report.sign_set) });
    for (k, v) in extra {
        result[k] = v;
    }
    Ok(Outcome {
        status,
        result,
        drawing: Vec::new(),
    })
}

fn embed_cmd(ctx: &Context, mm: &str, event: Option<&[String]>) -> Result<Outcome, Failure> {
    let sc = &ctx.scenario;
    let (n, e) = (sc.multimeasure(mm)?, sc.event(event)?);
    let mut atoms = serde_json::Map::new();
    for i in 0..sc.space.len() {
        atoms.insert(sc.space.label(i).to_string(), to_value(&embed(n.atom(i), &ctx.dirs)?));
    }
    let total = n.eval(&e)?;
    let negated = n.negate().eval(&e)?;
    Ok(Outcome {
        status: Status::Ok,
        result: json!({
            "multimeasure": mm,
            "directions": ctx.dirs.iter().map(|u| u.as_slice().to_vec()).collect::<Vec<_>>(),
            "atoms": atoms,
            "event": labels(&sc.space, &e),
            "value": embed(&total, &ctx.dirs)?,
            "negated": embed(&negated, &ctx.dirs)?,
        }),
        drawing: vec![(format!("{mm}(E)"), total)],
    })
}

fn generate(g: &Global, seed: u64, kind: KindArg, atoms: usize, dim: Option<usize>, body: BodyArg, independent: bool) -> Result<Outcome, Failure> {
    if atoms == 0 {
        return Err(Failure::Usage("--atoms must be positive".into()));
    }
    let mut rng = crate::examples::seeded(seed);
    let space = FiniteMeasurableSpace::with_atoms(atoms)?;
    let measure = |rng: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64| {
        SignedMeasure::new(space.clone(), (0..atoms).map(|_| rng.random_range(lo..hi)).collect())
    };
    let (dim, file) = match kind {
        KindArg::Interval => {
            let mu = measure(&mut rng, 0.5, 3.0)?;
            let f = MeasurableFunction::new(space.clone(), (0..atoms).map(|_| rng.random_range(-3.0..3.0)).collect())?;
            let n = make_interval_mm(&mu)?;
            (1, ScenarioFile::from_parts(&space, 1, &[("N", &n)], &[("f", &f)]))
        }
        KindArg::IntervalPair => {
            let mu = measure(&mut rng, 0.5, 3.0)?;
            let ratio: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.0..5.0)).collect();
            let nu = SignedMeasure::new(space.clone(), mu.values().iter().zip(&ratio).map(|(a, r)| a * r).collect())?;
            let p = make_interval_pair(&mu, &nu)?;
            (1, ScenarioFile::from_parts(&space, 1, &[("M", &p.m), ("N", &p.n)], &[]))
        }
        KindArg::BallPair => {
            let d = dim.unwrap_or(2);
            let mu = measure(&mut rng, 0.5, 2.0)?;
            let point = |rng: &mut rand_chacha::ChaCha8Rng| (0..d).map(|_| rng.random_range(-2.0..2.0)).collect::<Vec<f64>>();
            let f2: Vec<Vec<f64>> = (0..atoms).map(|_| point(&mut rng)).collect();
            let r2: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.2..2.0)).collect();
            let theta: Vec<f64> = (0..atoms)
                .map(|_| rng.random_range(0.1..5.0) * if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            let f1 = f2.iter().zip(&theta).map(|(c, t)| c.iter().map(|x| t * x).collect()).collect();
            let r1 = r2.iter().zip(&theta).map(|(r, t)| r * t.abs()).collect();
            let p = make_ball_pair(&BallData { centers: f1, radii: r1 }, &BallData { centers: f2, radii: r2 }, &mu)?;
            let theta = MeasurableFunction::new(space.clone(), theta)?;
            (d, ScenarioFile::from_parts(&space, d, &[("M", &p.m), ("N", &p.n)], &[("theta", &theta)]))
        }
        KindArg::Range => {
            let d = dim.unwrap_or(1);
            let kappa: Vec<Vec<f64>> = (0..atoms)
                .map(|i| {
                    (0..d)
                        .map(|_| {
                            let v = rng.random_range(0.2..3.0);
                            if i % 2 == 0 { v } else { -v }
                        })
                        .collect()
                })
                .collect();
            let p = make_range_mm(&kappa, g.event_cap.unwrap_or(DEFAULT_EVENT_CAP))?;
            (d, ScenarioFile::from_parts(&space, d, &[("M", &p.m), ("N", &p.n)], &[]))
        }
        KindArg::Random => {
            let profile = Profile {
                atoms,
                dim: dim.unwrap_or(2),
                body: match body {
                    BodyArg::Polytope => BodyKind::Polytope,
                    BodyArg::Ball => BodyKind::Ball,
                },
                plant: !independent,
                ..Profile::default()
            };
            let r = random_scenario(&profile, seed)?;
            let mut parts: Vec<(&str, &MeasurableFunction)> = Vec::new();
            if let Some(theta) = &r.planted {
                parts.push(("theta", theta));
            }
            (
                profile.dim,
                ScenarioFile::from_parts(&space, profile.dim, &[("M", &r.pair.m), ("N", &r.pair.n)], &parts),
            )
        }
    };
    let mut file = file;
    file.directions = Some(DirectionSpec {
        count: g.directions.unwrap_or_else(|| default_direction_count(dim)),
        seed,
    });
    Ok(Outcome::ok(to_value(&file)))
}

fn selftest_cmd(g: &Global, seed: u64, count: usize) -> Result<Outcome, Failure> {
    let tol = g.tol.unwrap_or(EPS_GEOM);
    let r = selftest::run_suite(seed, count, g.budget.unwrap_or(DEFAULT_BUDGET), tol)?;
    Ok(Outcome {
        status: if r.passed() { Status::Ok } else { Status::Inconsistent },
        result: to_value(&r),
        drawing: Vec::new(),
    })
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Failure::Io {
            path: p.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Outcome, Option<Context>, u64), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Scenario {
            action:
                ScenarioAction::Generate {
                    kind,
                    atoms,
                    dim,
                    body,
                    independent,
                },
        } => {
            let seed = g.seed.unwrap_or(0);
            Ok((generate(g, seed, *kind, *atoms, *dim, *body, *independent)?, None, seed))
        }
        Command::Selftest { count } => {
            let seed = g.seed.unwrap_or(42);
            Ok((selftest_cmd(g, seed, *count)?, None, seed))
        }
        cmd => {
            let ctx = load(g)?;
            let out = match cmd {
                Command::Validate => validate(&ctx),
                Command::Integrate {
                    function,
                    mm,
                    event,
                    aumann,
                } => integrate(&ctx, function, mm, event.as_deref(), *aumann)?,
                Command::Derive { m, n, local, audit } => derive(&ctx, m, n, *local, *audit)?,
                Command::Check {
                    m,
                    n,
                    condition,
                    d,
                    m_max,
                    sign_set,
                    epsilon,
                } => check(&ctx, m, n, *condition, *d, *m_max, sign_set.as_deref(), epsilon.as_deref())?,
                Command::Embed { mm, event } => embed_cmd(&ctx, mm, event.as_deref())?,
                Command::Scenario { .. } | Command::Selftest { .. } => unreachable!("handled above"),
            };
            let seed = ctx.seed;
            Ok((out, Some(ctx), seed))
        }
    }
}

/// Parses arguments, runs the command, writes the report, and returns the
/// process exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli, std::env::args().skip(1).collect()))
}

/// Runs a parsed command line; `argv` is echoed in the report.
pub fn run(cli: &Cli, argv: Vec<String>) -> u8 {
    let start = Instant::now();
    let is_generate = matches!(cli.command, Command::Scenario { .. });
    let (outcome, ctx, seed) = match dispatch(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            let result = match &e {
                Failure::Math(err) => json!({ "error": error_value(&FiniteMeasurableSpace::with_atoms(1).expect("one atom"), err) }),
                other => json!({ "error": { "kind": "invalid", "message": other.to_string() } }),
            };
            (
                Outcome {
                    status: Status::Invalid,
                    result,
                    drawing: Vec::new(),
                },
                None,
                cli.global.seed.unwrap_or(0),
            )
        }
    };
    let text = if is_generate && outcome.status == Status::Ok {
        serde_json::to_string_pretty(&outcome.result).expect("json") + "\n"
    } else {
        let report = Report {
            tool: "mvmeasure",
            version: env!("CARGO_PKG_VERSION"),
            command: argv,
            seed,
            inputs_digest: ctx.as_ref().map(|c| c.digest.clone()),
            settings: ctx.as_ref().map(|c| c.settings.clone()),
            status: outcome.status,
            result: outcome.result,
        };
        serde_json::to_string_pretty(&report).expect("json") + "\n"
    };
    if let Err(e) = write_out(cli.global.report.as_ref(), &text) {
        eprintln!("error: {e}");
        return Status::Invalid.code();
    }
    if let Some(path) = &cli.global.svg {
        match svg::render(&outcome.drawing) {
            Some(s) => {
                if let Err(e) = write_out(Some(path), &s) {
                    eprintln!("error: {e}");
                    return Status::Invalid.code();
                }
            }
            None => eprintln!("note: nothing to draw in one or two dimensions; no SVG written"),
        }
    }
    eprintln!("{} in {:.3}s", match outcome.status {
        Status::Ok => "ok",
        Status::Invalid => "invalid",
        Status::Negative => "negative result",
        Status::Inconsistent => "internal inconsistency",
    }, start.elapsed().as_secs_f64());
    outcome.status.code()
}
