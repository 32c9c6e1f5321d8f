//! `hitchin` command-line driver: parses arguments and job files, dispatches
//! to `hitchin_core`, and renders deterministic JSON reports.
//!
//! Exit codes: 0 success, 1 domain rejection, 2 usage or job-format error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hitchin_core::algebra::{linalg, Rational};
use hitchin_core::cech::DeformationComplex;
use hitchin_core::cubic::{cubic_eval, cubic_eval_f64, cubic_tensor, CameralDataA1, HolomorphicForm, LeafTangent};
use hitchin_core::hitchin::{cameral_genus, dimension_report, genericity_check, hitchin_map};
use hitchin_core::jets::{jet_equations, parse_system};
use hitchin_core::job::{poly_to_json, JobSpec, Mode};
use hitchin_core::lie::{lie_info, Family};
use hitchin_core::periods::{dtau_fd, period_matrix, PeriodOptions};
use hitchin_core::suite::run_suite;
use hitchin_core::{Error, ExactPoly};
use serde_json::{json, Number, Value};

#[derive(Parser, Debug)]
#[command(name = "hitchin", version, about = "Meromorphic Hitchin systems on the projective line")]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalFlags {
    /// Evaluation mode for the cubic.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Root residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Finite-difference step, as "p/q".
    #[arg(long = "fd-step", global = true)]
    fd_step: Option<String>,
    /// Reserved; all numerics are deterministic.
    #[arg(long = "seed-free", global = true)]
    seed_free: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lie-type data.
    Info { family: String, rank: usize },
    /// Base, leaf and moduli dimensions for divisor degree `d`.
    Dims { family: String, rank: usize, d: usize },
    /// Hitchin map of the job's Higgs field.
    Hitchin { job: PathBuf },
    /// Genericity of the rank-one spectral data.
    Generic { job: PathBuf },
    /// Jet-scheme equations of a polynomial system.
    Jets {
        #[arg(long)]
        order: usize,
        file: PathBuf,
    },
    /// Deformation-complex hypercohomology, pairing and Poisson map.
    Cech { job: PathBuf },
    /// Cubic tensor and optional single evaluation.
    Cubic { job: PathBuf },
    /// Riemann matrix and optional finite-difference derivative.
    Periods { job: PathBuf },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "default")]
        suite: String,
    },
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format { .. } | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli) {
        Ok((report, code)) => Outcome { code, stdout: render(&report), stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("rejected: {m}\n") },
    }
}

/// Pretty JSON with every non-integer number printed as `{:.16e}`.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&normalise_floats(v.clone())).expect("serialisable");
    s.push('\n');
    s
}

fn normalise_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            let f = n.as_f64().expect("finite number");
            Value::Number(Number::from_str(&format!("{f:.16e}")).expect("valid literal"))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalise_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalise_floats(v))).collect()),
        other => other,
    }
}

fn load_job(path: &Path, flags: &GlobalFlags) -> CliResult<JobSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("$: invalid JSON: {e}")))?;
    let mut job = JobSpec::from_json(&value)?;
    if let Some(m) = flags.mode {
        job.options.mode = match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        };
    }
    if let Some(t) = flags.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::Usage("--tol must be positive".into()));
        }
        job.options.tol = t;
    }
    if let Some(n) = flags.nodes {
        if !(4..=4096).contains(&n) {
            return Err(Failure::Usage("--nodes must lie in 4..=4096".into()));
        }
        job.options.nodes = n;
    }
    if let Some(s) = &flags.fd_step {
        let r = hitchin_core::algebra::parse_rational(s).map_err(|e| Failure::Usage(format!("--fd-step: {e}")))?;
        if r <= Rational::from_integer(0.into()) {
            return Err(Failure::Usage("--fd-step must be positive".into()));
        }
        job.options.fd_step = r.to_string();
    }
    Ok(job)
}

fn parse_family(s: &str) -> CliResult<Family> {
    s.parse().map_err(|_| Failure::Usage(format!("unknown Lie family {s:?}")))
}

fn period_options(job: &JobSpec) -> PeriodOptions {
    PeriodOptions { nodes: job.options.nodes, root_tol: job.options.tol, ..PeriodOptions::default() }
}

fn cameral_data(job: &JobSpec) -> CliResult<CameralDataA1> {
    if job.family != Family::A || job.rank != 1 {
        return Err(Failure::Domain(format!(
            "spectral data is implemented for A1, not {}{}",
            job.family.letter(),
            job.rank
        )));
    }
    let b = match (&job.b, &job.theta) {
        (Some(b), _) => b.clone(),
        (None, Some(_)) => spectral_b(job)?,
        (None, None) => return Err(Failure::Usage("$.b: missing field".into())),
    };
    Ok(CameralDataA1::new(b, job.require_divisor()?.clone())?)
}

/// `y^2 = b` with `b = -det theta` for a traceless `2 x 2` field.
fn spectral_b(job: &JobSpec) -> CliResult<ExactPoly> {
    let theta = job.higgs_field()?;
    let inv = hitchin_map(&theta)?;
    Ok(-inv[0].clone())
}

fn with_config(command: &str, config: Value, result: Value) -> Value {
    json!({ "command": command, "config": config, "result": result })
}

fn dispatch(cli: &Cli) -> CliResult<(Value, i32)> {
    let flags = &cli.global;
    let ok = |v: Value| Ok((v, 0));
    match &cli.command {
        Command::Info { family, rank } => {
            let info = lie_info(parse_family(family)?, *rank)?;
            ok(with_config("info", json!({"type": family, "rank": rank}), serde_json::to_value(info).expect("plain")))
        }
        Command::Dims { family, rank, d } => {
            let fam = parse_family(family)?;
            let dims = dimension_report(fam, *rank, *d)?;
            let genus = cameral_genus(fam, *rank, *d)?;
            let mut result = serde_json::to_value(dims).expect("plain");
            result["branchCount"] = json!(genus.branch_count);
            if let Some(g) = genus.genus {
                result["cameralGenus"] = json!(g);
            }
            ok(with_config("dims", json!({"type": family, "rank": rank, "d": d}), result))
        }
        Command::Hitchin { job } => {
            let job = load_job(job, flags)?;
            let theta = job.higgs_field()?;
            let inv = hitchin_map(&theta)?;
            let result = json!({
                "invariants": inv.iter().map(poly_to_json).collect::<Vec<_>>(),
                "discriminant": poly_to_json(&theta.matrix().charpoly_discriminant()),
            });
            ok(with_config("hitchin", job.resolved(), result))
        }
        Command::Generic { job } => {
            let job = load_job(job, flags)?;
            let b = match &job.b {
                Some(b) => b.clone(),
                None => spectral_b(&job)?,
            };
            let report = genericity_check(&b, job.require_divisor()?);
            let code = if report.ok { 0 } else { 1 };
            let result = json!({"b": poly_to_json(&b), "report": report});
            Ok((with_config("generic", job.resolved(), result), code))
        }
        Command::Jets { order, file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let variety = parse_system(&text).map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))?;
            let report = jet_equations(&variety, *order).report();
            let config = json!({"order": order, "file": file.display().to_string()});
            ok(with_config("jets", config, serde_json::to_value(report).expect("plain")))
        }
        Command::Cech { job } => {
            let job = load_job(job, flags)?;
            let dc = DeformationComplex::new(&job.higgs_field()?);
            let mut result = json!({ "hypercohomology": dc.hyper_dims() });
            match (&job.alpha, &job.beta) {
                (Some(a), Some(b)) => result["pairing"] = json!(dc.duality_pair(a, b)?.to_string()),
                (None, None) => {}
                _ => return Err(Failure::Usage("$.alpha/$.beta: pairing needs both cocycles".into())),
            }
            if job.options.gram {
                let strings = |m: &linalg::RatMatrix| -> Value {
                    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect()
                };
                let gram = dc.gram_matrix();
                let poisson = dc.poisson_matrix();
                result["gram"] = strings(&gram);
                result["gramDeterminant"] = json!(linalg::determinant(&gram).to_string());
                result["poisson"] = strings(&poisson);
                result["poissonRank"] = json!(linalg::rank(&poisson));
            }
            ok(with_config("cech", job.resolved(), result))
        }
        Command::Cubic { job } => {
            let job = load_job(job, flags)?;
            let data = cameral_data(&job)?;
            let tensor = cubic_tensor(&data)?;
            let mut result = json!({ "genus": data.genus(), "tensor": tensor });
            if job.options.mode == Mode::Float {
                result["tensorFloat"] = json!(tensor.to_f64());
            }
            if let Some(bdot) = &job.bdot {
                let xi = LeafTangent::new(bdot.clone(), &data)?;
                let form = |p: &Option<ExactPoly>| -> CliResult<HolomorphicForm> {
                    Ok(HolomorphicForm::new(p.clone().unwrap_or_else(|| ExactPoly::from_i64s(&[1])), &data)?)
                };
                let (eta, zeta) = (form(&job.eta)?, form(&job.zeta)?);
                result["form"] = poly_to_json(xi.form().u());
                result["value"] = match job.options.mode {
                    Mode::Exact => json!(cubic_eval(&data, &xi, &eta, &zeta)?.to_string()),
                    Mode::Float => {
                        let v = cubic_eval_f64(&data, &xi, &eta, &zeta)?;
                        json!([v.re, v.im])
                    }
                };
            }
            ok(with_config("cubic", job.resolved(), result))
        }
        Command::Periods { job } => {
            let job = load_job(job, flags)?;
            let opts = period_options(&job);
            let mut config = job.resolved();
            config["periodOptions"] = serde_json::to_value(&opts).expect("plain");
            let b = match &job.b {
                Some(b) => b.clone(),
                None => spectral_b(&job)?,
            };
            let rm = period_matrix(&b, &opts)?;
            let mut result = json!({ "riemannMatrix": rm });
            if let Some(bdot) = &job.bdot {
                let data = cameral_data(&job)?;
                let h = job.options.fd_step_rational()?;
                result["dtau"] = serde_json::to_value(dtau_fd(&data, bdot, &h, &opts)?).expect("plain");
            }
            ok(with_config("periods", config, result))
        }
        Command::Verify { suite } => {
            if suite != "default" {
                return Err(Failure::Usage(format!("unknown suite {suite:?}")));
            }
            let report = run_suite();
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            let code = if report.all_passed { 0 } else { 1 };
            Ok((with_config("verify", json!({"suite": suite}), serde_json::to_value(report).expect("plain")), code))
        }
    }
}
