//! Expression language and command runner behind the `levmeas` binary.

pub mod ast;
pub mod config;
pub mod eval;
pub mod parse;

use std::cmp::Ordering;

use serde_json::{json, Value};
use thiserror::Error;

use levmeas::additive::AdditiveFamily;
use levmeas::exec::Execution;
use levmeas::forest::{Classification, DddForest, LevelOf, UniformLevel};
use levmeas::index::index;
use levmeas::matrix::{GroupKind, MatrixFamily};
use levmeas::oracle::oracle_stratified_measure;
use levmeas::{AlgebraError, MeasureValue, SetError};

pub use ast::{Element, Expr};
pub use config::{Config, FamilySpec};
pub use eval::{evaluate, ExprFamily};
pub use parse::{parse, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Set(#[from] SetError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    FamilyMismatch(String),
    #[error("{0}")]
    Usage(String),
    #[error("oracle disagrees: measure {measure}, oracle {oracle}")]
    OracleMismatch { measure: String, oracle: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Measure,
    Canon,
    Level,
    UniformLevel,
    Index,
    Compare,
    Classify,
    OracleCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Measure => "measure",
            Command::Canon => "canon",
            Command::Level => "level",
            Command::UniformLevel => "uniform-level",
            Command::Index => "index",
            Command::Compare => "compare",
            Command::Classify => "classify",
            Command::OracleCheck => "oracle-check",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Command::Index | Command::Compare => 2,
            _ => 1,
        }
    }
}

/// The result of one command: the text line and the JSON `result` value.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub result: Value,
}

impl Output {
    fn plain(text: String) -> Self {
        Output { result: Value::String(text.clone()), text }
    }
}

pub fn run(config: &Config, command: Command, inputs: &[String]) -> Result<Output, CliError> {
    if inputs.len() != command.arity() {
        return Err(CliError::Usage(format!(
            "`{}` takes {} expression(s), got {}",
            command.name(),
            command.arity(),
            inputs.len()
        )));
    }
    let params = config.params()?;
    let exprs = inputs
        .iter()
        .map(|s| parse(s, params, &config.family))
        .collect::<Result<Vec<_>, _>>()?;
    match config.family {
        FamilySpec::Additive => {
            if config.paper_scaling {
                return Err(CliError::FamilyMismatch(
                    "--paper-scaling applies to the matrix families only".into(),
                ));
            }
            run_in(&AdditiveFamily::new(params), command, &exprs, &|m| measure_output(m, "Y"))
        }
        FamilySpec::Matrix(kind, m) => {
            let fam = MatrixFamily::new(params, m, kind)?;
            let d = (m * m) as i64 - if kind == GroupKind::SL { 1 } else { 0 };
            let scaling = config.paper_scaling;
            run_in(&fam, command, &exprs, &|v| {
                if scaling {
                    measure_output(&v.scale_exponents(d), "X")
                } else {
                    measure_output(v, "Y")
                }
            })
        }
    }
}

fn measure_output(m: &MeasureValue, var: &str) -> Output {
    let terms: Vec<Value> = m
        .terms()
        .map(|(e, c)| json!({ "coefficient": c.to_string(), "exponent": e.coords() }))
        .collect();
    Output { text: m.display_with(var).to_string(), result: json!({ "variable": var, "terms": terms }) }
}

fn distinguished<F: ExprFamily>(fam: &F, e: &Expr, command: Command) -> Result<F::Set, CliError> {
    eval::as_distinguished(&evaluate(fam, e)?).ok_or_else(|| {
        CliError::Usage(format!("`{}` expects distinguished sets, got `{e}`", command.name()))
    })
}

fn run_in<F: ExprFamily>(
    fam: &F,
    command: Command,
    exprs: &[Expr],
    show_measure: &dyn Fn(&MeasureValue) -> Output,
) -> Result<Output, CliError> {
    Ok(match command {
        Command::Measure => show_measure(&evaluate(fam, &exprs[0])?.measure(fam)),
        Command::Canon => {
            let forest = evaluate(fam, &exprs[0])?;
            Output::plain(eval::forest_expr(fam, &forest).to_string())
        }
        Command::Level => Output::plain(match evaluate(fam, &exprs[0])?.level_of(fam) {
            LevelOf::Level(l) => l.to_string(),
            LevelOf::EmptySet => "empty".into(),
        }),
        Command::UniformLevel => Output::plain(match evaluate(fam, &exprs[0])?.uniform_level(fam) {
            UniformLevel::Uniform(l) => l.to_string(),
            UniformLevel::NotUniform { level, witness: Some(x) } => {
                format!("not uniform at level {level}; witness {}", fam.show_point(&x))
            }
            UniformLevel::NotUniform { level, witness: None } => format!("not uniform at level {level}"),
            UniformLevel::EmptySet => "empty".into(),
        }),
        Command::Index => {
            let inner = distinguished(fam, &exprs[0], command)?;
            let outer = distinguished(fam, &exprs[1], command)?;
            Output::plain(index(fam, &inner, &outer)?.to_string())
        }
        Command::Compare => {
            let a = evaluate(fam, &exprs[0])?;
            let b = evaluate(fam, &exprs[1])?;
            Output::plain(compare(fam, &a, &b))
        }
        Command::Classify => Output::plain(match evaluate(fam, &exprs[0])?.classify(fam) {
            Classification::Level(l) => format!("level {l}"),
            Classification::TypeS => "type S".into(),
            Classification::TypeL => "type L".into(),
            Classification::TypeE => "type E".into(),
        }),
        Command::OracleCheck => {
            let forest = evaluate(fam, &exprs[0])?;
            let measure = forest.measure(fam);
            let oracle = oracle_stratified_measure(fam, &forest, Execution::default())?;
            let shown = show_measure(&measure);
            if measure.cmp(&oracle) != Ordering::Equal {
                return Err(CliError::OracleMismatch {
                    measure: shown.text,
                    oracle: show_measure(&oracle).text,
                });
            }
            Output { text: format!("agree: {}", shown.text), result: shown.result }
        }
    })
}

/// Trichotomy names for distinguished sets, set relations otherwise.
fn compare<F: ExprFamily>(fam: &F, a: &DddForest<F::Set>, b: &DddForest<F::Set>) -> String {
    if let (Some(x), Some(y)) = (eval::as_distinguished(a), eval::as_distinguished(b)) {
        return fam.compare(&x, &y).name().to_string();
    }
    let (ab, ba) = (a.is_subset(fam, b), b.is_subset(fam, a));
    match (ab, ba) {
        (true, true) => "equal",
        (true, false) => "first inside second",
        (false, true) => "second inside first",
        _ if a.intersect(fam, b).is_empty() => "disjoint",
        _ => "overlapping",
    }
    .to_string()
}

/// The full JSON document printed under `--json`.
pub fn json_document(config: &Config, command: Command, inputs: &[String], out: &Output) -> Value {
    let input = if inputs.len() == 1 { json!(inputs[0]) } else { json!(inputs) };
    json!({
        "command": command.name(),
        "input": input,
        "result": out.result,
        "family": config.family.to_string(),
        "p": config.p,
        "dim": config.dim,
    })
}
