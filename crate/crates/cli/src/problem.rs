//! Problem files: serde model, validation and located errors.
//!
//! See `docs/problem-format.md` for the grammar.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use gradhom::{Fp, Rationals, DEFAULT_PRIME};

use crate::build::build_env;
use crate::ops::{Op, ParamKind};

/// Names every problem can use without declaring them.
pub const BUILTINS: [&str; 3] = ["R", "k", "omega"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Json", into = "Json")]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    /// `"p"`, `"rational"`, `"Q"`, `"F_101"` or a bare prime.
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim();
        match t {
            "p" | "P" | "Fp" => return Ok(FieldSpec::Prime(DEFAULT_PRIME)),
            "rational" | "rationals" | "Q" | "QQ" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("GF")).unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| format!("unknown field {s:?}"))?;
        let p32 = u32::try_from(p).map_err(|_| format!("{p} is not an odd prime below 2^31"))?;
        Fp::new(p32).map_err(|e| e.to_string())?;
        Ok(FieldSpec::Prime(p32))
    }

    pub fn describe(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("F_{p}"),
            FieldSpec::Rational => "Q".to_string(),
        }
    }
}

impl TryFrom<Json> for FieldSpec {
    type Error = String;

    fn try_from(v: Json) -> Result<Self, String> {
        match v {
            Json::Number(n) => FieldSpec::parse(&n.to_string()),
            Json::String(s) => FieldSpec::parse(&s),
            other => Err(format!("field must be a prime or \"rational\", found {other}")),
        }
    }
}

impl From<FieldSpec> for Json {
    fn from(f: FieldSpec) -> Json {
        match f {
            FieldSpec::Prime(p) => Json::from(p),
            FieldSpec::Rational => Json::from("rational"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl RingSpec {
    pub fn weights(&self) -> Vec<u32> {
        self.weights.clone().unwrap_or_else(|| vec![1; self.vars.len()])
    }

    pub fn describe(&self) -> String {
        let w = self.weights();
        let vars = if w.iter().all(|&x| x == 1) {
            self.vars.join(",")
        } else {
            let parts: Vec<String> = self.vars.iter().zip(&w).map(|(v, w)| format!("{v}:{w}")).collect();
            parts.join(",")
        };
        if self.relations.is_empty() {
            format!("k[{vars}]")
        } else {
            format!("k[{vars}]/({})", self.relations.join(", "))
        }
    }
}

/// Module declarations. Relation columns list one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Ring,
    ResidueField,
    Canonical,
    Free(Vec<i64>),
    /// R/(f_1, ..., f_n)
    Cyclic(Vec<String>),
    Presentation {
        gens: Vec<i64>,
        relations: Vec<Vec<String>>,
    },
    Syzygy {
        of: String,
        index: usize,
    },
    /// M(-by): generators moved up by `by`
    Twist {
        of: String,
        by: i64,
    },
    Sum(Vec<String>),
    Hom(String, String),
    Tensor(String, String),
}

/// Module homomorphisms, used as chain maps between complexes in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    /// Column j is the image of source generator j.
    Matrix {
        source: String,
        target: String,
        columns: Vec<Vec<String>>,
    },
    /// Multiplication by a homogeneous f, from the twist of `on` by deg f.
    Multiply { on: String, by: String },
    Identity(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexSpec {
    Module(String),
    Shift { of: String, by: i64 },
    Sum(Vec<String>),
    Cone(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub op: String,
    #[serde(default)]
    pub args: Json,
    #[serde(default)]
    pub bound: Option<usize>,
    #[serde(default)]
    pub expect: Option<Json>,
    #[serde(default)]
    pub label: Option<String>,
}

/// The file as written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub field: FieldSpec,
    pub ring: RingSpec,
    #[serde(default)]
    pub bound: Option<usize>,
    #[serde(default)]
    pub modules: IndexMap<String, ModuleSpec>,
    #[serde(default)]
    pub maps: IndexMap<String, MapSpec>,
    #[serde(default)]
    pub complexes: IndexMap<String, ComplexSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

/// A task with its operation resolved and arguments keyed by parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Task {
    pub index: usize,
    pub op: Op,
    pub args: BTreeMap<String, Json>,
    pub bound: Option<usize>,
    pub expect: Option<Json>,
    pub label: Option<String>,
}

impl Task {
    pub fn name_arg(&self, key: &str) -> Option<&str> {
        self.args.get(key).and_then(|v| v.as_str())
    }

    pub fn int_arg(&self, key: &str) -> Option<i64> {
        self.args.get(key).and_then(|v| v.as_i64())
    }

    /// `op(a=X, b=Y)`.
    pub fn signature(&self) -> String {
        let parts: Vec<String> = self
            .args
            .iter()
            .map(|(k, v)| match v {
                Json::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        format!("{}({})", self.op.name(), parts.join(", "))
    }
}

/// A validated problem: names resolve, polynomials parse and are
/// homogeneous, presentations and maps are well defined.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub raw: RawProblem,
    pub tasks: Vec<Task>,
    /// Label used in reports.
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{}undefined name {name:?} at {path}", location_prefix(.location))]
    Undefined {
        name: String,
        path: String,
        location: Option<(usize, usize)>,
    },
    #[error("{}not homogeneous at {path}: {detail}", location_prefix(.location))]
    Inhomogeneous {
        path: String,
        detail: String,
        location: Option<(usize, usize)>,
    },
    #[error("{}{path}: {msg}", location_prefix(.location))]
    Invalid {
        path: String,
        msg: String,
        location: Option<(usize, usize)>,
    },
}

fn location_prefix(loc: &Option<(usize, usize)>) -> String {
    match loc {
        Some((l, c)) => format!("line {l}, column {c}: "),
        None => String::new(),
    }
}

impl ProblemError {
    pub fn invalid(path: impl Into<String>, msg: impl fmt::Display) -> Self {
        ProblemError::Invalid {
            path: path.into(),
            msg: msg.to_string(),
            location: None,
        }
    }

    pub fn undefined(name: &str, path: impl Into<String>) -> Self {
        ProblemError::Undefined {
            name: name.to_string(),
            path: path.into(),
            location: None,
        }
    }

    /// Attaches the first position of `"needle"` in the source text.
    fn locate(mut self, text: &str) -> Self {
        let needle = match &self {
            ProblemError::Undefined { name, .. } => format!("\"{name}\""),
            ProblemError::Inhomogeneous { detail, .. } => format!("\"{}\"", detail_poly(detail)),
            ProblemError::Invalid { path, .. } => format!("\"{}\"", last_key(path)),
            ProblemError::Syntax { .. } => return self,
        };
        let found = line_col(text, &needle);
        match &mut self {
            ProblemError::Undefined { location, .. }
            | ProblemError::Inhomogeneous { location, .. }
            | ProblemError::Invalid { location, .. } => {
                if location.is_none() {
                    *location = found;
                }
            }
            ProblemError::Syntax { .. } => {}
        }
        self
    }
}

fn detail_poly(detail: &str) -> &str {
    detail.rsplit(": ").next().unwrap_or(detail)
}

fn last_key(path: &str) -> &str {
    let tail = path.rsplit('.').next().unwrap_or(path);
    tail.split('[').next().unwrap_or(tail)
}

fn line_col(text: &str, needle: &str) -> Option<(usize, usize)> {
    let at = text.find(needle)?;
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| ProblemError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    validate(raw).map_err(|e| e.locate(text))
}

/// Validates an already deserialized problem.
pub fn validate(raw: RawProblem) -> Result<ProblemFile, ProblemError> {
    check_names(&raw)?;
    let tasks = raw
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| normalize_task(i, t))
        .collect::<Result<Vec<_>, _>>()?;
    let name = raw.name.clone().unwrap_or_else(|| raw.ring.describe());
    let pf = ProblemFile { raw, tasks, name };
    match pf.raw.field {
        FieldSpec::Prime(p) => {
            let f = Fp::new(p).map_err(|e| ProblemError::invalid("field", e))?;
            build_env(f, &pf)?;
        }
        FieldSpec::Rational => {
            build_env(Rationals, &pf)?;
        }
    }
    Ok(pf)
}

fn check_names(raw: &RawProblem) -> Result<(), ProblemError> {
    let mut seen: HashSet<&str> = HashSet::new();
    let sections = [
        ("modules", raw.modules.keys().collect::<Vec<_>>()),
        ("maps", raw.maps.keys().collect()),
        ("complexes", raw.complexes.keys().collect()),
    ];
    for (section, names) in sections {
        for n in names {
            let path = format!("{section}.{n}");
            if BUILTINS.contains(&n.as_str()) {
                return Err(ProblemError::invalid(path, format!("{n:?} is a builtin name")));
            }
            if !valid_identifier(n) {
                return Err(ProblemError::invalid(path, format!("{n:?} is not a valid name")));
            }
            if !seen.insert(n) {
                return Err(ProblemError::invalid(path, format!("{n:?} is defined twice")));
            }
        }
    }
    Ok(())
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || "_'-".contains(c))
}

fn normalize_task(i: usize, t: &TaskSpec) -> Result<Task, ProblemError> {
    let path = format!("tasks[{i}]");
    let op = Op::from_name(&t.op).ok_or_else(|| {
        ProblemError::invalid(format!("{path}.op"), format!("unknown operation {:?}", t.op))
    })?;
    let params = op.params();
    let mut args = BTreeMap::new();
    match &t.args {
        Json::Null => {}
        Json::Array(items) => {
            if items.len() > params.len() {
                return Err(ProblemError::invalid(
                    format!("{path}.args"),
                    format!("{} takes at most {} arguments", op.name(), params.len()),
                ));
            }
            for (v, (p, _, _)) in items.iter().zip(params) {
                args.insert(p.to_string(), v.clone());
            }
        }
        Json::Object(map) => {
            for (k, v) in map {
                if !params.iter().any(|(p, _, _)| p == k) {
                    return Err(ProblemError::invalid(
                        format!("{path}.args.{k}"),
                        format!("{} has no parameter {k:?}", op.name()),
                    ));
                }
                args.insert(k.clone(), v.clone());
            }
        }
        other => {
            return Err(ProblemError::invalid(
                format!("{path}.args"),
                format!("arguments must be a list or an object, found {other}"),
            ))
        }
    }
    for (p, kind, required) in params {
        let apath = format!("{path}.args.{p}");
        match args.get(*p) {
            None if *required => {
                return Err(ProblemError::invalid(apath, format!("missing argument {p:?}")));
            }
            None => {}
            Some(v) => match kind {
                ParamKind::Object | ParamKind::Module => {
                    if !v.is_string() {
                        return Err(ProblemError::invalid(apath, "expected an object name"));
                    }
                }
                ParamKind::Int => {
                    if !v.is_i64() {
                        return Err(ProblemError::invalid(apath, "expected an integer"));
                    }
                }
                ParamKind::Choice(opts) => {
                    if !v.as_str().is_some_and(|s| opts.contains(&s)) {
                        return Err(ProblemError::invalid(apath, format!("expected one of {opts:?}")));
                    }
                }
            },
        }
    }
    Ok(Task {
        index: i,
        op,
        args,
        bound: t.bound,
        expect: t.expect.clone(),
        label: t.label.clone(),
    })
}

/// Applies a field override from the command line.
pub fn with_field(mut pf: ProblemFile, field: FieldSpec) -> Result<ProblemFile, ProblemError> {
    if pf.raw.field == field {
        return Ok(pf);
    }
    pf.raw.field = field;
    validate(pf.raw)
}
