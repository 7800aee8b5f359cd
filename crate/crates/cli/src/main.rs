mod setfile;
mod witness;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use semiconvex::algebra::{OpNode, Pipeline};
use semiconvex::cellset::set_max_hyperplanes;
use semiconvex::classify::{classify, essentially_inner_point, inner_vector_space, outer_dimension, predicate_table};
use semiconvex::constructions::{
    construct_compact_interval, construct_open_interval, construct_pointed_rectangle, construct_ray,
    define_closed_from_ray, define_from_ray, polymorphism_check, verify_pointed_stripe, ConstructionReport,
};
use semiconvex::{AffineMap, CellSet, Error, PieceList, Rational, Vector};

use setfile::ParseError;

#[derive(Parser)]
#[command(name = "semiconvex", version, about = "Classify and transform convex semilinear sets exactly")]
struct Cli {
    /// Cap on the number of hyperplanes in an arrangement.
    #[arg(long, global = true, default_value_t = 24)]
    max_hyperplanes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the class of a set and print the witness.
    Classify {
        file: PathBuf,
        /// Re-check the witness payload of an earlier classify report.
        #[arg(long, value_name = "REPORT")]
        check_witness: Option<PathBuf>,
    },
    /// Apply one operation and write the canonical result.
    Apply {
        op: Op,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Rows of the matrix as a JSON array of arrays of rational strings.
        #[arg(long)]
        matrix: Option<String>,
        /// Offset as a JSON array of rational strings (default zero).
        #[arg(long)]
        offset: Option<String>,
        /// Direction for `dlimit` as a JSON array of rational strings.
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a construction pipeline and compare it with its target.
    VerifyConstruction {
        name: Construction,
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        density: u32,
        #[arg(long, default_value_t = 16)]
        truncation: usize,
    },
    /// Decide whether two files describe the same set.
    Equal { a: PathBuf, b: PathBuf },
    /// Decide membership of a point; non-members of the closure get a separating hyperplane.
    Member {
        file: PathBuf,
        /// JSON array of rational strings.
        #[arg(long)]
        point: String,
    },
    /// Grid points of the set at step 1/density.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        density: u32,
    },
    /// Check whether x -> sum lambda_i x_i preserves the set.
    Polycheck {
        file: PathBuf,
        /// JSON array of rational strings summing to 1.
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Image,
    Preimage,
    Intersect,
    Closure,
    Dlimit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Ray,
    OpenInterval,
    CompactInterval,
    PointedRectangle,
    PointedStripePointwise,
    ClosedFromRay,
    FromRay,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Argument(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NotConvex(_)) => 2,
            CliError::Core(Error::Precondition(_)) => 3,
            CliError::Parse(_) | CliError::Argument(_) => 4,
            CliError::Core(Error::ResourceCap { .. }) => 5,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) | CliError::Argument(_) => "PARSE",
            CliError::Io { .. } => "IO",
            CliError::Failed(_) => "VERIFICATION",
            CliError::Core(e) => match e {
                Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
                Error::Empty => "EMPTY",
                Error::NotConvex(_) => "NOT_CONVEX",
                Error::ResourceCap { .. } => "RESOURCE_CAP",
                Error::Precondition(_) => "PRECONDITION",
                Error::InvalidArgument(_) => "INVALID_ARGUMENT",
                Error::Verification(_) => "VERIFICATION",
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_pieces(path: &Path) -> CliResult<PieceList> {
    Ok(setfile::parse(&read(path)?)?)
}

fn load(path: &Path) -> CliResult<CellSet> {
    Ok(CellSet::canonicalize(&load_pieces(path)?)?)
}

fn json_arg<T: DeserializeOwned>(name: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Argument(format!("--{name}: {e}")))
}

fn class_payload(s: &CellSet) -> CliResult<Value> {
    let cls = classify(s)?;
    let mut out = json!({
        "class": cls.tag.number(),
        "class_name": cls.tag,
        "predicates": predicate_table(s)?,
        "witness": cls.witness,
    });
    if !s.is_empty() {
        out["outer_dimension"] = json!(outer_dimension(s)?);
        out["inner_vector_space"] = json!(inner_vector_space(s)?);
        out["essentially_inner_point"] = json!(essentially_inner_point(s)?);
    }
    Ok(out)
}

fn cmd_classify(file: &Path, check: Option<&Path>) -> CliResult<Value> {
    let pieces = load_pieces(file)?;
    let earlier: Option<Value> = match check {
        Some(p) => Some(serde_json::from_str(&read(p)?).map_err(|e| CliError::Argument(format!("report: {e}")))?),
        None => None,
    };
    let set = match CellSet::canonicalize(&pieces) {
        Ok(s) => s,
        Err(Error::NotConvex(w)) => {
            let mut result = json!({ "witness": w });
            if let Some(r) = &earlier {
                let c = witness::check_not_convex(&pieces, r).map_err(CliError::Argument)?;
                result["witness_check"] = json!({ "not_convex": c.valid });
                if !c.valid {
                    return Err(CliError::Failed("not-convex witness does not re-verify".into()));
                }
            }
            return Ok(json!({ "status": "NOT_CONVEX", "result": result }));
        }
        Err(e) => return Err(e.into()),
    };
    let mut result = class_payload(&set)?;
    if let Some(r) = &earlier {
        if r.get("status").and_then(Value::as_str) == Some("NOT_CONVEX") {
            return Err(CliError::Failed("report claims the set is not convex".into()));
        }
        let checks = witness::check_class(&set, r).map_err(CliError::Argument)?;
        let table: serde_json::Map<String, Value> =
            checks.iter().map(|c| (c.kind.to_string(), Value::Bool(c.valid))).collect();
        result["witness_check"] = Value::Object(table);
        if checks.iter().any(|c| !c.valid) {
            return Err(CliError::Failed("witness does not re-verify".into()));
        }
    }
    Ok(json!({ "status": "OK", "result": result }))
}

fn affine_arg(matrix: Option<&str>, offset: Option<&str>, input_dim: Option<usize>) -> CliResult<AffineMap> {
    let rows: Vec<Vector> = json_arg("matrix", matrix.ok_or_else(|| CliError::Argument("--matrix is required".into()))?)?;
    let cols = rows.first().map(Vec::len).or(input_dim).unwrap_or(0);
    let offset: Vector = match offset {
        Some(o) => json_arg("offset", o)?,
        None => vec![Rational::zero(); rows.len()],
    };
    Ok(AffineMap::new(rows, offset, cols)?)
}

fn cmd_apply(
    op: Op,
    files: &[PathBuf],
    matrix: Option<&str>,
    offset: Option<&str>,
    direction: Option<&str>,
    out: Option<&Path>,
) -> CliResult<Value> {
    let sources: Vec<Arc<OpNode>> = files.iter().map(|f| load(f).map(OpNode::source)).collect::<CliResult<_>>()?;
    let single = || -> CliResult<Arc<OpNode>> {
        match sources.as_slice() {
            [s] => Ok(s.clone()),
            _ => Err(CliError::Argument("operation takes exactly one file".into())),
        }
    };
    let root = match op {
        Op::Image => {
            let src = single()?;
            let f = affine_arg(matrix, offset, None)?;
            OpNode::image(src, f)?
        }
        Op::Preimage => {
            let src = single()?;
            OpNode::preimage(src, affine_arg(matrix, offset, None)?)?
        }
        Op::Intersect => {
            if sources.len() < 2 {
                return Err(CliError::Argument("intersect takes at least two files".into()));
            }
            OpNode::intersect(sources.clone())?
        }
        Op::Closure => OpNode::closure(single()?),
        Op::Dlimit => {
            let d: Vector =
                json_arg("direction", direction.ok_or_else(|| CliError::Argument("--direction is required".into()))?)?;
            OpNode::directional_limit(single()?, d)?
        }
    };
    let pipeline = Pipeline::new(root);
    let result = pipeline.evaluate()?;
    let mono = pipeline.check_monotonicity()?;
    let inputs: Vec<u8> = mono.nodes.iter().filter(|n| n.depth == 1).map(|n| n.class.number()).collect();
    let text = setfile::write(&result);
    let mut payload = json!({
        "input_classes": inputs,
        "output_class": mono.root_class().number(),
        "monotone": mono.flags() == 0,
        "monotonicity": mono,
        "trace": pipeline.trace(),
    });
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|source| CliError::Io { path: p.to_owned(), source })?;
            payload["out"] = json!(p.display().to_string());
        }
        None => payload["set_file"] = json!(text),
    }
    Ok(json!({ "status": "OK", "result": payload }))
}

fn construction_payload(r: &ConstructionReport) -> Value {
    json!({
        "name": r.name,
        "verified": r.verified,
        "recipe": r.recipe,
        "trace": r.pipeline.trace(),
        "result_set_file": setfile::write(&r.result),
    })
}

fn cmd_verify(name: Construction, file: &Path, density: u32, truncation: usize) -> CliResult<Value> {
    let set = load(file)?;
    let (payload, ok) = match name {
        Construction::PointedStripePointwise => {
            let r = verify_pointed_stripe(&set, density, truncation, 2)?;
            let ok = r.all_agree();
            let mut v = json!(r);
            v["name"] = json!("pointed-stripe-pointwise");
            v["verified"] = json!(ok);
            (v, ok)
        }
        other => {
            let r = match other {
                Construction::Ray => construct_ray(&set)?,
                Construction::OpenInterval => construct_open_interval(&set)?,
                Construction::CompactInterval => construct_compact_interval(&set)?,
                Construction::PointedRectangle => construct_pointed_rectangle(&set)?,
                Construction::ClosedFromRay => define_closed_from_ray(&set)?,
                Construction::FromRay => define_from_ray(&set)?,
                Construction::PointedStripePointwise => unreachable!(),
            };
            (construction_payload(&r), r.verified)
        }
    };
    let status = if ok { "OK" } else { "ERROR" };
    Ok(json!({ "status": status, "result": payload }))
}

fn cmd_member(file: &Path, point: &str) -> CliResult<Value> {
    let set = load(file)?;
    let x: Vector = json_arg("point", point)?;
    let member = set.membership(&x)?;
    let in_closure = !set.is_empty() && set.top().contains(&x);
    let mut result = json!({ "point": x, "member": member, "in_closure": in_closure });
    if !in_closure && !set.is_empty() {
        result["separation"] = json!(set.top().separate(&x)?);
    }
    Ok(json!({ "status": "OK", "result": result }))
}

fn run(cli: &Cli) -> CliResult<Value> {
    set_max_hyperplanes(cli.max_hyperplanes);
    match &cli.command {
        Command::Classify { file, check_witness } => cmd_classify(file, check_witness.as_deref()),
        Command::Apply { op, files, matrix, offset, direction, out } => {
            cmd_apply(*op, files, matrix.as_deref(), offset.as_deref(), direction.as_deref(), out.as_deref())
        }
        Command::VerifyConstruction { name, file, density, truncation } => cmd_verify(*name, file, *density, *truncation),
        Command::Equal { a, b } => {
            let equal = load(a)?.set_equal(&load(b)?)?;
            Ok(json!({ "status": "OK", "result": { "equal": equal } }))
        }
        Command::Member { file, point } => cmd_member(file, point),
        Command::Sample { file, density } => {
            let points = load(file)?.sample_points(*density)?;
            Ok(json!({ "status": "OK", "result": { "count": points.len(), "points": points } }))
        }
        Command::Polycheck { file, lambda } => {
            let l: Vec<Rational> = json_arg("lambda", lambda)?;
            let outcome = polymorphism_check(&load(file)?, &l)?;
            Ok(json!({ "status": "OK", "result": outcome }))
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let echo = json!(args[1..]);
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (mut report, code) = match run(&cli) {
        Ok(v) => {
            let code = match v["status"].as_str() {
                Some("NOT_CONVEX") => 2,
                Some("ERROR") => 1,
                _ => 0,
            };
            (v, code)
        }
        Err(e) => {
            let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
            if let CliError::Parse(p) = &e {
                err["line"] = json!(p.line);
                err["column"] = json!(p.column);
            }
            (json!({ "status": "ERROR", "error": err }), e.exit_code())
        }
    };
    report["command"] = echo;
    // a closed stdout (e.g. piped into head) is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}
