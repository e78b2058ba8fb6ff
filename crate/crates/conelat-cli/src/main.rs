//! `conelat`: quasi-suprema, order diagnostics and the reproduction harness from the
//! command line. Every command prints a single JSON document on stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conelat::harness;
use conelat::operators::{self, OperatorMatrix};
use conelat::order_metrics::{self, PropertyFlavor, PropertyKind};
use conelat::quasilattice::{self, IdentityOptions};
use conelat::solver::{self, GridSpec, SolverOptions, Status};
use conelat::{OrderedSpace, Vector};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "conelat",
    version,
    about = "Quasi-lattice operations on ordered spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quasi-supremum of two vectors.
    Quasisup(PairArgs),
    /// Quasi-absolute value `(−x) ∨̃ x`.
    Abs(SingleArgs),
    /// Positive and negative parts `0 ∨̃ ±x` and the level-1 decomposition.
    Posneg(SingleArgs),
    /// Order diagnostics and operator experiments.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Reruns the worked examples, and with `--all` the property suites.
    Reproduce(ReproduceArgs),
    /// Quasi-supremum by refined grid search, ℝⁿ with n ≤ 4.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct SpaceArg {
    /// Space descriptor: a JSON file or inline JSON.
    #[arg(long)]
    space: Option<String>,
    /// Problem file holding the space, the vectors and solver options.
    #[arg(long, conflicts_with = "space")]
    problem: Option<PathBuf>,
}

#[derive(Args)]
struct SeedArg {
    #[arg(long, env = "CONELAT_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    space: SpaceArg,
    /// Vector as `1,0,2` or `[1,0,2]`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[command(flatten)]
    seed: SeedArg,
    /// Number of solver restarts.
    #[arg(long)]
    restarts: Option<usize>,
}

#[derive(Args)]
struct SingleArgs {
    #[command(flatten)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Grid points per axis on the base level.
    #[arg(long, default_value_t = 81)]
    points: usize,
}

#[derive(Args)]
struct SampleArgs {
    /// Space descriptor: a JSON file or inline JSON.
    #[arg(long)]
    space: String,
    /// Random samples drawn for the check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Algebraic identities of the quasi-lattice operations on random triples.
    Identities {
        #[command(flatten)]
        common: SampleArgs,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// A normality property at a given constant.
    Normality {
        #[command(flatten)]
        common: SampleArgs,
        /// One of max-normal, sum-normal, abs-normal, normal.
        #[arg(long)]
        flavor: PropertyKind,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sampled conormality constant.
    Conormality {
        #[command(flatten)]
        common: SampleArgs,
        /// One of sum-conormal, max-conormal, abs-conormal, conormal.
        #[arg(long)]
        flavor: PropertyKind,
    },
    /// Regularity classification at a given constant.
    Regularity {
        #[command(flatten)]
        common: SampleArgs,
        #[arg(long)]
        alpha: f64,
    },
    /// Positivity and norms of an operator.
    Operator {
        /// Operator JSON file.
        #[arg(long)]
        op: PathBuf,
        /// Rays probed when the domain cone is curved.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Gap between the operator norm and the norm over positive unit vectors.
    Attained {
        #[arg(long)]
        op: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    case: Vec<String>,
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    seed: SeedArg,
    /// Report zero runtimes so repeated runs compare byte for byte.
    #[arg(long)]
    no_timings: bool,
}

/// A problem file. Vectors given on the command line override the file's.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    space: OrderedSpace,
    #[serde(default)]
    operation: Option<String>,
    #[serde(default)]
    x: Option<Vec<f64>>,
    #[serde(default)]
    y: Option<Vec<f64>>,
    #[serde(default)]
    options: Option<SolverOptions>,
}

/// Failure classes, mapped to exit codes.
enum Failure {
    /// Bad input: schema, arguments, unknown case.
    Input(String),
    /// The computation finished but did not produce the requested object.
    Unresolved(Value),
    /// Some reference case failed.
    Failed(Value),
}

impl From<conelat::Error> for Failure {
    fn from(e: conelat::Error) -> Self {
        match e {
            conelat::Error::Unresolved(status) => {
                Failure::Unresolved(json!({ "status": to_json(&status), "error": e.to_string() }))
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_text(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| input(format!("cannot read {arg}: {e}")))
    }
}

fn parse_space(arg: &str) -> Result<OrderedSpace, Failure> {
    serde_json::from_str(&read_text(arg)?).map_err(|e| input(format!("invalid space: {e}")))
}

fn parse_vector(arg: &str) -> Result<Vec<f64>, Failure> {
    let t = arg.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| input(format!("invalid vector {arg}: {e}")));
    }
    t.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| input(format!("invalid vector {arg}: {e}")))
        })
        .collect()
}

struct Problem {
    space: OrderedSpace,
    x: Option<Vec<f64>>,
    y: Option<Vec<f64>>,
    options: Option<SolverOptions>,
}

fn load_problem(
    s: &SpaceArg,
    op: &str,
    x: &Option<String>,
    y: &Option<String>,
) -> Result<Problem, Failure> {
    let mut p = match (&s.space, &s.problem) {
        (Some(space), None) => Problem {
            space: parse_space(space)?,
            x: None,
            y: None,
            options: None,
        },
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            let f: ProblemFile = serde_json::from_str(&text)
                .map_err(|e| input(format!("invalid problem file: {e}")))?;
            if let Some(o) = &f.operation {
                if o != op {
                    return Err(input(format!("problem file is for {o:?}, not {op:?}")));
                }
            }
            Problem {
                space: f.space,
                x: f.x,
                y: f.y,
                options: f.options,
            }
        }
        _ => return Err(input("one of --space or --problem is required")),
    };
    if let Some(v) = x {
        p.x = Some(parse_vector(v)?);
    }
    if let Some(v) = y {
        p.y = Some(parse_vector(v)?);
    }
    Ok(p)
}

fn required(v: Option<Vec<f64>>, name: &str) -> Result<Vector, Failure> {
    v.map(Vector::from_vec)
        .ok_or_else(|| input(format!("missing vector {name}")))
}

fn solver_options(p: &Problem, seed: u64, restarts: Option<usize>) -> SolverOptions {
    let mut o = p.options.clone().unwrap_or_default().with_seed(seed);
    if let Some(r) = restarts {
        o.n_restarts = r;
    }
    o
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn slice(v: &Vector) -> Vec<f64> {
    v.as_slice().to_vec()
}

fn load_operator(path: &PathBuf) -> Result<OperatorMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("invalid operator: {e}")))
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Quasisup(a) => {
            let p = load_problem(&a.space, "quasisup", &a.x, &a.y)?;
            let opts = solver_options(&p, a.seed.seed, a.restarts);
            let (x, y) = (required(p.x.clone(), "x")?, required(p.y.clone(), "y")?);
            let r = solver::quasi_sup(&p.space, &x, &y, &opts)?;
            let out = json!({ "command": "quasisup", "seed": a.seed.seed, "result": to_json(&r) });
            match r.status {
                Status::Unique | Status::FlatMinimum => Ok(out),
                Status::Infeasible | Status::MaxIter => Err(Failure::Unresolved(out)),
            }
        }
        Command::Abs(a) => {
            let p = load_problem(&a.space, "abs", &a.x, &None)?;
            let opts = solver_options(&p, a.seed.seed, None);
            let x = required(p.x.clone(), "x")?;
            let r = quasilattice::quasi_abs(&p.space, &x, &opts)?;
            Ok(
                json!({ "command": "abs", "seed": a.seed.seed, "abs": slice(&r), "norm": p.space.norm(&r) }),
            )
        }
        Command::Posneg(a) => {
            let p = load_problem(&a.space, "posneg", &a.x, &None)?;
            let opts = solver_options(&p, a.seed.seed, None);
            let x = required(p.x.clone(), "x")?;
            let pos = quasilattice::pos_part(&p.space, &x, &opts)?;
            let neg = quasilattice::neg_part(&p.space, &x, &opts)?;
            let d = quasilattice::ando_decompose(&p.space, &x, &opts)?;
            Ok(json!({
                "command": "posneg",
                "seed": a.seed.seed,
                "pos": slice(&pos),
                "neg": slice(&neg),
                "decomposition": { "pos": slice(&d.pos), "neg": slice(&d.neg), "ratio": d.ratio },
            }))
        }
        Command::Oracle(a) => {
            let p = load_problem(&a.space, "oracle", &a.x, &a.y)?;
            let (x, y) = (required(p.x.clone(), "x")?, required(p.y.clone(), "y")?);
            let grid = GridSpec {
                points_per_axis: a.points,
                ..Default::default()
            };
            let r = solver::brute_force_quasi_sup(&p.space, &x, &y, &grid)?;
            Ok(json!({ "command": "oracle", "result": to_json(&r) }))
        }
        Command::Check { what } => check(what),
        Command::Reproduce(a) => {
            let seed = a.seed.seed;
            let report = if a.all {
                harness::run_all(seed)
            } else {
                let ids: Vec<&str> = a.case.iter().map(String::as_str).collect();
                harness::run_cases(&ids, seed)?
            };
            let report = if a.no_timings {
                report.without_timings()
            } else {
                report
            };
            let out = json!({ "command": "reproduce", "seed": seed, "report": to_json(&report) });
            if report.pass {
                Ok(out)
            } else {
                Err(Failure::Failed(out))
            }
        }
    }
}

fn check(what: CheckCommand) -> Result<Value, Failure> {
    match what {
        CheckCommand::Identities { common, tol } => {
            let space = parse_space(&common.space)?;
            let seed = common.seed.seed;
            let opts = IdentityOptions {
                tol,
                solver: SolverOptions::default().with_seed(seed),
            };
            let r = quasilattice::identity_sweep(&space, common.samples, seed, &opts)?;
            Ok(
                json!({ "command": "check identities", "seed": seed, "samples": common.samples, "report": to_json(&r) }),
            )
        }
        CheckCommand::Normality {
            common,
            flavor,
            alpha,
            tol,
        } => {
            let space = parse_space(&common.space)?;
            let seed = common.seed.seed;
            let f = PropertyFlavor::new(flavor, alpha)?;
            let sample = order_metrics::normality_sample(&space, flavor, common.samples, seed)?;
            let r = order_metrics::normality_check(&space, f, &sample, tol)?;
            Ok(json!({ "command": "check normality", "seed": seed, "report": to_json(&r) }))
        }
        CheckCommand::Conormality { common, flavor } => {
            let space = parse_space(&common.space)?;
            let seed = common.seed.seed;
            let opts = SolverOptions::default().with_seed(seed);
            let e = order_metrics::conormality_constant_estimate(
                &space,
                flavor,
                common.samples,
                seed,
                &opts,
            )?;
            Ok(json!({
                "command": "check conormality",
                "seed": seed,
                "flavor": flavor,
                "samples": common.samples,
                "estimate": e,
            }))
        }
        CheckCommand::Regularity { common, alpha } => {
            let space = parse_space(&common.space)?;
            let seed = common.seed.seed;
            let r = order_metrics::regularity_classify(&space, alpha, common.samples, seed)?;
            Ok(json!({ "command": "check regularity", "seed": seed, "report": to_json(&r) }))
        }
        CheckCommand::Operator {
            op,
            samples,
            seed,
            tol,
        } => {
            let t = load_operator(&op)?;
            let seed = seed.seed;
            let pos = operators::operator_positive(&t, tol, samples, seed)?;
            let norm = operators::operator_norm(&t);
            let robinson = operators::robinson_norm(&t, operators::ROBINSON_SAMPLES, 50, seed).ok();
            Ok(json!({
                "command": "check operator",
                "seed": seed,
                "positivity": to_json(&pos),
                "norm": to_json(&norm),
                "robinson_norm_lb": robinson,
            }))
        }
        CheckCommand::Attained { op, seed, tol } => {
            let t = load_operator(&op)?;
            let seed = seed.seed;
            let r = operators::positively_attained_check(&t, tol, seed)?;
            Ok(json!({ "command": "check attained", "seed": seed, "report": to_json(&r) }))
        }
    }
}

fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Unresolved(v)) => {
            print(&v);
            ExitCode::from(2)
        }
        Err(Failure::Failed(v)) => {
            print(&v);
            eprintln!("error: some reference cases failed");
            ExitCode::from(1)
        }
    }
}
