use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubal::enumerate::{census_from_operations, Enumerator, DEFAULT_MAX_M, ORBIT_CENSUS_MAX_M};
use cubal::field::format_rational;
use cubal::format::{self, CensusDoc, CubicMatrixDoc, OperationDoc};
use cubal::structure::{self, Side};
use cubal::suite::{self, OperationReport};
use cubal::{CubalError, CubicMatrix, Operation, Rational, SequenceClass, Subset, Symmetry};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{InputDigest, Report};

/// Largest `m` for `verify --all` unless `CUBAL_MAX_M` raises it.
const VERIFY_MAX_M: usize = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CubalError),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cubal", version, about = "Algebras of cubic matrices over associative operations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Accept non-associative tables.
    #[arg(long, global = true)]
    pub unchecked: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate or count associative operations on an m-element set.
    Enum(EnumArgs),
    /// Split the census into S_m-orbits with canonical representatives.
    Orbits(OrbitsArgs),
    /// Product A *_a B.
    Mul(MulArgs),
    /// Plenary power A^[n].
    Plenary(PlenaryArgs),
    /// Characters (nonzero multiplicative linear forms).
    Char(OpArgs),
    /// Image of X in the accompanying algebra.
    Phi(PhiArgs),
    /// Left or right zero-divisor witness.
    Zerodiv(ZerodivArgs),
    /// Invariant subsets, subalgebras and the image ideal.
    Subalg(SubalgArgs),
    /// Check every structural identity for one operation or a whole census.
    Verify(VerifyArgs),
    /// Orbit, symmetry, image and squaring sequences of an operation.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub count_only: bool,
    /// Also write the orbit census to this JSON file.
    #[arg(long)]
    pub census: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long, required_unless_present = "from")]
    pub m: Option<usize>,
    /// Read a previously written census instead of enumerating.
    #[arg(long, conflicts_with = "m")]
    pub from: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// Cayley table, text or JSON.
    #[arg(long)]
    pub op: PathBuf,
}

#[derive(Debug, Args)]
pub struct MulArgs {
    #[arg(long)]
    pub op: PathBuf,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlenaryArgs {
    #[arg(long)]
    pub op: PathBuf,
    #[arg(long)]
    pub n: usize,
    pub a: PathBuf,
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    pub x: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct ZerodivArgs {
    #[arg(long)]
    pub op: PathBuf,
    #[arg(long, value_enum)]
    pub side: SideArg,
    pub a: PathBuf,
}

#[derive(Debug, Args)]
pub struct SubalgArgs {
    #[arg(long)]
    pub op: PathBuf,
    #[arg(long)]
    pub list_invariant_sets: bool,
    /// Comma-separated 1-based seed set K; reports the closure chain J_{a,n}(K).
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, requires = "all", conflicts_with = "op")]
    pub m: Option<usize>,
    /// Verify every associative operation of size m.
    #[arg(long)]
    pub all: bool,
    #[arg(long, required_unless_present = "m")]
    pub op: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub op: PathBuf,
    /// Second table; reports a permutation relabeling --op into it, if any.
    #[arg(long)]
    pub with: Option<PathBuf>,
}

pub struct Outcome {
    pub report: Report,
    /// Names of failed verification checks; nonempty means exit status 1.
    pub failures: Vec<String>,
}

/// Reads `CUBAL_MAX_M`, falling back to `default` when unset.
fn budget(default: usize) -> CliResult<usize> {
    match std::env::var("CUBAL_MAX_M") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|raised| raised.max(default))
            .map_err(|_| CliError::Usage(format!("CUBAL_MAX_M must be an integer, found {v:?}"))),
        Err(_) => Ok(default),
    }
}

struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    fn new() -> Self {
        Inputs { digests: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        self.digests.push(InputDigest::of(&path.display().to_string(), &bytes));
        String::from_utf8(bytes)
            .map_err(|_| CliError::Io { path: path.to_path_buf(), message: "not UTF-8".into() })
    }

    fn operation(&mut self, path: &Path, unchecked: bool) -> CliResult<Operation> {
        let text = self.read(path)?;
        format::parse_operation(&text, unchecked).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    fn matrix(&mut self, path: &Path) -> CliResult<CubicMatrix> {
        let text = self.read(path)?;
        format::parse_cubic_matrix(&text)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn op_json(op: &Operation) -> Value {
    serde_json::to_value(OperationDoc::from(op)).expect("serializable")
}

fn matrix_json(x: &CubicMatrix) -> Value {
    serde_json::to_value(CubicMatrixDoc::from(x)).expect("serializable")
}

fn subset_json(s: &Subset) -> Value {
    json!(s.one_based())
}

fn symmetry_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::Left => "left",
        Symmetry::Right => "right",
        Symmetry::Both => "both",
        Symmetry::None => "none",
    }
}

fn sequence_json(class: &SequenceClass) -> Value {
    match class {
        SequenceClass::Periodic { period, cycle } => {
            json!({"class": "periodic", "period": period, "cycle": subset_json(cycle)})
        }
        SequenceClass::Convergent { entry, limit } => {
            json!({"class": "convergent", "entry": entry, "limit": limit + 1})
        }
        SequenceClass::EventuallyPeriodic { entry, period, cycle } => json!({
            "class": "eventually_periodic", "entry": entry, "period": period, "cycle": subset_json(cycle)
        }),
    }
}

fn parse_seed(text: &str, m: usize) -> CliResult<Subset> {
    let members = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad seed element {s:?}"))))
        .collect::<CliResult<Vec<usize>>>()?;
    Ok(Subset::from_one_based(m, &members)?)
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    let unchecked = cli.unchecked;
    let mut inputs = Inputs::new();
    let mut failures = Vec::new();
    let (command, result) = match cli.command {
        Command::Enum(args) => ("enum", run_enum(&args)?),
        Command::Orbits(args) => ("orbits", run_orbits(&args, &mut inputs)?),
        Command::Mul(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            let x = inputs.matrix(&args.a)?;
            let y = inputs.matrix(&args.b)?;
            ("mul", json!({"product": matrix_json(&x.mul(&y, &a)?)}))
        }
        Command::Plenary(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            let x = inputs.matrix(&args.a)?;
            ("plenary", json!({"n": args.n, "power": matrix_json(&x.plenary_power(args.n, &a)?)}))
        }
        Command::Char(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            ("char", run_char(&a))
        }
        Command::Phi(args) => {
            let x = inputs.matrix(&args.x)?;
            let image = structure::phi(&x);
            let result = json!({
                "m": x.m(),
                "image": format::square_matrix_rows(image.coeffs()),
                "in_kernel": structure::in_kernel_ideal(&x),
            });
            ("phi", result)
        }
        Command::Zerodiv(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            let x = inputs.matrix(&args.a)?;
            let result = run_zerodiv(&a, &x, args.side)?;
            if result["criterion_agrees"] == json!(false) {
                failures.push(format!("zero-divisor criterion {} disagrees with the kernel solver", result["criterion"]));
            }
            ("zerodiv", result)
        }
        Command::Subalg(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            ("subalg", run_subalg(&a, &args)?)
        }
        Command::Verify(args) => {
            let reports = match (&args.op, args.m) {
                (Some(path), _) => vec![suite::verify_operation(&inputs.operation(path, unchecked)?)?],
                (None, Some(m)) => verify_all(m)?,
                (None, None) => return Err(CliError::Usage("verify needs --op or --m with --all".into())),
            };
            for r in &reports {
                failures.extend(r.failures().into_iter().map(|name| format!("{name} for operation {:?}", r.operation)));
            }
            ("verify", verify_json(&reports))
        }
        Command::Classify(args) => {
            let a = inputs.operation(&args.op, unchecked)?;
            let other = args.with.as_ref().map(|p| inputs.operation(p, unchecked)).transpose()?;
            ("classify", run_classify(&a, other.as_ref())?)
        }
    };
    Ok(Outcome {
        report: Report { command: command.into(), inputs: inputs.digests, result },
        failures,
    })
}

fn run_enum(args: &EnumArgs) -> CliResult<Value> {
    let max_m = budget(DEFAULT_MAX_M)?;
    let enumerator = Enumerator::with_budget(args.m, max_m)?.jobs(args.jobs as usize);
    let need_tables = !args.count_only || args.census.is_some();
    let ops = need_tables.then(|| enumerator.collect());
    let total = match &ops {
        Some(ops) => ops.len() as u64,
        None => enumerator.count(),
    };
    let mut result = json!({"m": args.m, "total": total});
    if let Some(path) = &args.census {
        let orbit_limit = budget(ORBIT_CENSUS_MAX_M)?;
        if args.m > orbit_limit {
            return Err(CubalError::Capacity {
                m: args.m,
                limit: orbit_limit,
                hint: "the orbit pass relabels every table by all of S_m; raise CUBAL_MAX_M".into(),
            }
            .into());
        }
        let census = census_from_operations(args.m, ops.as_deref().unwrap_or_default());
        write_file(path, &format::census_to_json(&census))?;
        result["orbit_count"] = json!(census.orbit_count);
        result["census"] = json!(path.display().to_string());
    }
    if !args.count_only {
        let tables: Vec<Value> = ops.unwrap_or_default().iter().map(|op| json!(op.rows_one_based())).collect();
        result["operations"] = Value::Array(tables);
    }
    Ok(result)
}

fn run_orbits(args: &OrbitsArgs, inputs: &mut Inputs) -> CliResult<Value> {
    let census = match (&args.from, args.m) {
        (Some(path), _) => {
            let text = inputs.read(path)?;
            format::parse_census(&text)
                .map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?
        }
        (None, Some(m)) => cubal::enumerate::orbit_census_with(m, budget(ORBIT_CENSUS_MAX_M)?, args.jobs as usize)?,
        (None, None) => return Err(CliError::Usage("orbits needs --m or --from".into())),
    };
    let symmetric: Vec<Value> = census
        .orbits
        .iter()
        .filter(|o| o.size == 1)
        .map(|o| json!({"table": o.representative.rows_one_based(), "kind": symmetry_name(o.representative.symmetry())}))
        .collect();
    let mut result = serde_json::to_value(CensusDoc::from(&census)).expect("serializable");
    result["symmetric"] = Value::Array(symmetric);
    Ok(result)
}

fn run_char(a: &Operation) -> Value {
    let analysis = structure::character_analysis::<Rational>(a);
    let slices: Vec<Value> = analysis
        .slices
        .iter()
        .map(|s| json!({"slice": s.slice + 1, "forced_zero": subset_json(&s.forced_zero)}))
        .collect();
    let characters: Vec<Value> = analysis.characters.iter().map(|c| matrix_json(c.coeffs())).collect();
    json!({
        "operation": op_json(a),
        "baric": !characters.is_empty(),
        "character_count": characters.len(),
        "characters": characters,
        "slices": slices,
    })
}

fn run_zerodiv(a: &Operation, x: &CubicMatrix, side: SideArg) -> CliResult<Value> {
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let annihilator = structure::annihilator_basis(x, a, side)?;
    let det = x.accompanying_matrix().det()?;
    // Criterion side: left for right-symmetric, right for left-symmetric.
    let criterion = match (a.symmetry(), side) {
        (Symmetry::Right, Side::Left) | (Symmetry::Left, Side::Right) => Some("det_zero"),
        (Symmetry::Right, Side::Right) | (Symmetry::Left, Side::Left) if a.m() >= 2 => Some("always"),
        _ => None,
    };
    let predicted = criterion.map(|c| c == "always" || det == Rational::from_integer(0.into()));
    Ok(json!({
        "side": match side { Side::Left => "left", Side::Right => "right" },
        "is_zero_divisor": !annihilator.is_empty(),
        "witness": annihilator.first().map(matrix_json),
        "annihilator_dimension": annihilator.len(),
        "accompanying_matrix": format::square_matrix_rows(&x.accompanying_matrix()),
        "det": format_rational(&det),
        "symmetry": symmetry_name(a.symmetry()),
        "criterion": criterion,
        "criterion_agrees": predicted.map(|p| p == !annihilator.is_empty()),
    }))
}

fn run_subalg(a: &Operation, args: &SubalgArgs) -> CliResult<Value> {
    let counts = structure::count_subalgebras_from_invariants(a)?;
    let ideal = structure::image_ideal_span(a);
    let mut result = json!({
        "operation": op_json(a),
        "image": subset_json(&a.image()),
        "image_ideal": {"dimension": ideal.dim(), "is_ideal": structure::is_ideal(&ideal, a)?},
        "nonempty_invariant_subsets": counts.per_block,
        "subalgebras_per_block": counts.per_block,
        "subalgebras_lower_bound": counts.total,
        "singleton_closures": (0..a.m())
            .map(|i| Ok(subset_json(&a.closure(&Subset::singleton(a.m(), i)?)?)))
            .collect::<CliResult<Vec<Value>>>()?,
        "power_cycles": (0..a.m())
            .map(|i| Ok(sequence_json(&a.power_sequence(i)?)))
            .collect::<CliResult<Vec<Value>>>()?,
    });
    if args.list_invariant_sets {
        result["invariant_subsets"] = counts.invariant_subsets.iter().map(subset_json).collect();
    }
    if let Some(seed) = &args.seed {
        let seed = parse_seed(seed, a.m())?;
        let chain = a.closure_chain(&seed)?;
        let closure = chain.last().expect("nonempty").clone();
        result["closure_chain"] = chain.iter().map(subset_json).collect();
        if !closure.is_empty() {
            let span = structure::subalgebra_span(a, &closure, 0, 0)?;
            result["closure_subalgebra"] = json!({
                "block": [1, 1],
                "triples": span.one_based(),
                "is_subalgebra": structure::is_subalgebra(&span, a)?,
            });
        }
    }
    Ok(result)
}

fn verify_all(m: usize) -> CliResult<Vec<OperationReport>> {
    let limit = budget(VERIFY_MAX_M)?;
    if m > limit {
        return Err(CubalError::Capacity {
            m,
            limit,
            hint: "the full suite is exhaustive over basis triples; use --op for single tables or raise CUBAL_MAX_M".into(),
        }
        .into());
    }
    let ops = Enumerator::with_budget(m, limit)?.collect();
    ops.iter().map(|op| Ok(suite::verify_operation(op)?)).collect()
}

fn verify_json(reports: &[OperationReport]) -> Value {
    let mut summary = serde_json::Map::new();
    if let Some(first) = reports.first() {
        for (name, _) in first.checks() {
            let passed = reports
                .iter()
                .filter(|r| r.checks().iter().any(|(n, ok)| *n == name && *ok))
                .count();
            summary.insert(name.into(), json!(passed == reports.len()));
        }
    }
    json!({
        "operation_count": reports.len(),
        "all_passed": reports.iter().all(OperationReport::all_passed),
        "summary": summary,
        "operations": reports,
    })
}

fn run_classify(a: &Operation, other: Option<&Operation>) -> CliResult<Value> {
    let orbit = a.orbit();
    let mut result = json!({
        "operation": op_json(a),
        "associative": a.is_associative(),
        "canonical_representative": op_json(&a.canonical_representative()),
        "orbit_size": orbit.len(),
        "orbit": orbit.iter().map(|o| json!(o.rows_one_based())).collect::<Vec<_>>(),
        "symmetric": a.is_symmetric(),
        "symmetry": symmetry_name(a.symmetry()),
        "image": subset_json(&a.image()),
        "power_sequences": (0..a.m())
            .map(|i| Ok(sequence_json(&a.power_sequence(i)?)))
            .collect::<CliResult<Vec<Value>>>()?,
    });
    if let Some(b) = other {
        let pi = a.equivalence_to(b)?;
        let isomorphic = match &pi {
            Some(pi) => Some(structure::verify_isomorphism(a, b, pi)?),
            None => None,
        };
        result["equivalence"] = json!({
            "with": op_json(b),
            "permutation": pi.as_ref().map(|p| p.one_based()),
            "isomorphism_verified": isomorphic,
        });
    }
    Ok(result)
}
