//! Report documents: per-task entries, statuses, summaries, text form and
//! comparisons between runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use gradhom::invariants::FinitenessStatus;
use gradhom::sdc::{AuslanderVerdict, DualizingStatus, GcdimValue, SdcVerdict, Value, Verdict};

use crate::ops::TaskResult;

pub const SCHEMA: &str = "gradhom-report/1";
pub const ENGINE: &str = concat!("gradhom ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "HYPOTHESES-NOT-MET")]
    HypothesesNotMet,
    #[serde(rename = "UNCERTIFIED")]
    Uncertified,
    /// A computation without a verdict.
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "ERROR")]
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::HypothesesNotMet => "HYPOTHESES-NOT-MET",
            Status::Uncertified => "UNCERTIFIED",
            Status::Ok => "OK",
            Status::Error => "ERROR",
        }
    }
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::HypothesesNotMet => Status::HypothesesNotMet,
            Verdict::Uncertified => Status::Uncertified,
        }
    }
}

/// Status implied by a result before any expectation is applied.
pub fn status_of(result: &TaskResult) -> Status {
    match result {
        TaskResult::Report(r) => r.verdict.into(),
        TaskResult::Properties(p) if !p.holds() => Status::Fail,
        TaskResult::Gcdim(g) if !g.identities_hold() => Status::Fail,
        TaskResult::Dualizing(d) if !d.coherent => {
            let k_uncertified = matches!(d.gcdim_k.value, GcdimValue::UncertifiedUpTo(_));
            let id_unknown = matches!(d.status, DualizingStatus::InjectiveDimensionUnknown(_));
            if k_uncertified || id_unknown {
                Status::Uncertified
            } else {
                Status::Fail
            }
        }
        TaskResult::Error(_) => Status::Error,
        _ => Status::Ok,
    }
}

/// Variant name of results that carry a status-like tag.
fn tag_of(result: &TaskResult) -> Option<&'static str> {
    Some(match result {
        TaskResult::Finiteness(v) => match v.status {
            FinitenessStatus::FiniteCertified(_) => "FiniteCertified",
            FinitenessStatus::FiniteLikely(_) => "FiniteLikely",
            FinitenessStatus::UnknownAtLeast(_) => "UnknownAtLeast",
        },
        TaskResult::Gcdim(g) => match g.value {
            GcdimValue::FiniteEquals(_) => "FiniteEquals",
            GcdimValue::Infinite(_) => "Infinite",
            GcdimValue::UncertifiedUpTo(_) => "UncertifiedUpTo",
        },
        TaskResult::Auslander(a) => match a {
            AuslanderVerdict::MemberAtBound(_) => "MemberAtBound",
            AuslanderVerdict::NotMember(_) => "NotMember",
            AuslanderVerdict::Uncertified(_) => "Uncertified",
        },
        TaskResult::Certificate(c) => match c.verdict {
            SdcVerdict::SemidualizingUpTo(_) => "SemidualizingUpTo",
            SdcVerdict::Failed(_) => "Failed",
        },
        TaskResult::Dualizing(d) => match d.status {
            DualizingStatus::Dualizing => "Dualizing",
            DualizingStatus::NotSemidualizing(_) => "NotSemidualizing",
            DualizingStatus::InjectiveDimensionUnknown(_) => "InjectiveDimensionUnknown",
        },
        _ => return None,
    })
}

fn subset(expect: &Json, actual: &Json) -> bool {
    match (expect, actual) {
        (Json::Object(e), Json::Object(a)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|w| subset(v, w))),
        (Json::Array(e), Json::Array(a)) => e.len() <= a.len() && e.iter().zip(a).all(|(x, y)| subset(x, y)),
        _ => expect == actual,
    }
}

/// Whether a result meets a recorded expectation. A string names a status
/// or a result tag; a number an integer value; an array a prefix of a
/// table; an object a sub-structure of the serialized result.
pub fn expectation_met(expect: &Json, status: Status, result: &TaskResult) -> bool {
    match expect {
        Json::String(s) => s == status.as_str() || tag_of(result) == Some(s.as_str()),
        Json::Number(n) => {
            let n = n.as_i64();
            match result {
                TaskResult::Int(v) => n == Some(*v),
                TaskResult::Finiteness(v) => n.is_some() && v.certified() == n,
                TaskResult::Gcdim(g) => n.is_some() && g.finite() == n,
                _ => false,
            }
        }
        Json::Bool(b) => matches!(result, TaskResult::Bool(v) if v == b),
        Json::Array(_) => {
            let actual: Json = match result {
                TaskResult::Table(t) => t.values.values().copied().collect::<Vec<_>>().into(),
                TaskResult::Dims(d) => d.values().map(|h| Json::from(h.length)).collect::<Vec<_>>().into(),
                TaskResult::Series(s) => s.values().copied().collect::<Vec<_>>().into(),
                other => inner_json(other),
            };
            subset(expect, &actual)
        }
        Json::Object(_) => subset(expect, &inner_json(result)),
        Json::Null => matches!(result, TaskResult::Error(_)),
    }
}

fn inner_json(result: &TaskResult) -> Json {
    serde_json::to_value(result)
        .ok()
        .and_then(|v| v.get("value").cloned())
        .unwrap_or(Json::Null)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskEntry {
    pub problem: String,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub op: String,
    pub args: BTreeMap<String, Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub bound: usize,
    pub status: Status,
    pub result: TaskResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_met: Option<bool>,
    /// Wall time in microseconds.
    pub micros: u64,
}

impl TaskEntry {
    pub fn signature(&self) -> String {
        let parts: Vec<String> = self
            .args
            .iter()
            .map(|(k, v)| match v {
                Json::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        format!("{}({})", self.op, parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInfo {
    pub name: String,
    pub field: String,
    pub ring: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub counts: BTreeMap<Status, usize>,
    pub expectation_failures: usize,
}

impl Summary {
    pub fn of(entries: &[TaskEntry]) -> Self {
        let mut counts = BTreeMap::new();
        for e in entries {
            *counts.entry(e.status).or_insert(0) += 1;
        }
        Summary {
            total: entries.len(),
            counts,
            expectation_failures: entries.iter().filter(|e| e.expectation_met == Some(false)).count(),
        }
    }

    pub fn count(&self, s: Status) -> usize {
        self.counts.get(&s).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub engine: String,
    pub problems: Vec<ProblemInfo>,
    /// Bound used for tasks without their own.
    pub default_bound: usize,
    /// Multiplier applied to every task bound.
    pub bound_scale: usize,
    pub seed: u64,
    pub entries: Vec<TaskEntry>,
    pub summary: Summary,
    pub micros: u64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The same document with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut d = self.clone();
        d.micros = 0;
        for e in &mut d.entries {
            e.micros = 0;
        }
        d
    }

    pub fn has_fail(&self) -> bool {
        self.summary.count(Status::Fail) > 0
    }

    /// 1 when a FAIL is present, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_fail())
    }

    pub fn entries_with(&self, status: Status) -> impl Iterator<Item = &TaskEntry> {
        self.entries.iter().filter(move |e| e.status == status)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  ({})", self.engine, self.schema);
        let mut current = None;
        for e in &self.entries {
            if current != Some(&e.problem) {
                current = Some(&e.problem);
                let info = self.problems.iter().find(|p| p.name == e.problem);
                match info {
                    Some(p) => {
                        let _ = writeln!(out, "\n{}  over {}  {}", p.name, p.field, p.ring);
                    }
                    None => {
                        let _ = writeln!(out, "\n{}", e.problem);
                    }
                }
            }
            let mut line = format!(
                "  #{:<3} {:<48} B={:<3} {:<18} {}",
                e.index,
                e.label.clone().unwrap_or_else(|| e.signature()),
                e.bound,
                e.status.as_str(),
                brief(&e.result)
            );
            if e.expectation_met == Some(false) {
                let _ = write!(line, "  [expected {}]", e.expect.as_ref().map_or(String::new(), |j| j.to_string()));
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        let s = &self.summary;
        let counts: Vec<String> = s.counts.iter().map(|(k, v)| format!("{v} {}", k.as_str())).collect();
        let _ = writeln!(
            out,
            "\n{} tasks: {}; {:.2}s",
            s.total,
            if counts.is_empty() { "none".to_string() } else { counts.join(", ") },
            self.micros as f64 / 1e6
        );
        if s.expectation_failures > 0 {
            let _ = writeln!(out, "{} unmet expectations", s.expectation_failures);
        }
        out
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::None => "-".into(),
        Value::Int(n) => n.to_string(),
        Value::Table(t) => {
            let parts: Vec<String> = t.values().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(" "))
        }
        Value::Bool(b) => b.to_string(),
        Value::Finiteness(f) => format!("{f:?}"),
        Value::Text(s) => s.clone(),
    }
}

/// One-line rendering of a result.
pub fn brief(r: &TaskResult) -> String {
    match r {
        TaskResult::Report(rep) => {
            let mut s = format!("{} vs {}", value_text(&rep.left), value_text(&rep.right));
            let failed: Vec<&str> = rep
                .hypotheses
                .iter()
                .filter(|h| h.status != gradhom::sdc::HypothesisStatus::Met)
                .map(|h| h.name.as_str())
                .collect();
            if !failed.is_empty() {
                let _ = write!(s, "; open: {}", failed.join("; "));
            }
            s
        }
        TaskResult::Table(t) => {
            let parts: Vec<String> = t.values.values().map(|x| x.to_string()).collect();
            format!("{:?} from {}: {}", t.kind, t.certified.0, parts.join(" "))
        }
        TaskResult::Finiteness(f) => format!("{:?}", f.status),
        TaskResult::Int(n) => n.to_string(),
        TaskResult::Bool(b) => b.to_string(),
        TaskResult::Dims(d) => {
            let parts: Vec<String> = d
                .iter()
                .map(|(i, h)| match h.length {
                    Some(l) => format!("{i}:{l}"),
                    None => format!("{i}:dim {}", h.krull_dim.map_or(-1, |k| k as i64)),
                })
                .collect();
            parts.join(" ")
        }
        TaskResult::Series(s) => {
            let parts: Vec<String> = s.iter().map(|(d, c)| format!("{d}:{c}")).collect();
            parts.join(" ")
        }
        TaskResult::Homology(h) if h.degrees.is_empty() => "exact".to_string(),
        TaskResult::Homology(h) => {
            let parts: Vec<String> = h
                .degrees
                .iter()
                .map(|(i, d)| format!("H_{i} len {}", d.length.map_or("∞".to_string(), |l| l.to_string())))
                .collect();
            parts.join(", ")
        }
        TaskResult::Certificate(c) => format!("{:?}", c.verdict),
        TaskResult::Dualizing(d) => format!("{:?}, G_C-dim k {:?}", d.status, d.gcdim_k.value),
        TaskResult::Gcdim(g) => format!("{:?}", g.value),
        TaskResult::Auslander(a) => format!("{a:?}"),
        TaskResult::Oracle(o) => format!("betti {:?} bass {:?}", o.betti, o.bass),
        TaskResult::Properties(p) => {
            let bad: Vec<&str> = p.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
            if bad.is_empty() {
                format!("{} checks hold (shift {})", p.checks.len(), p.shift)
            } else {
                format!("violated: {}", bad.join("; "))
            }
        }
        TaskResult::Error(e) => e.clone(),
    }
}

/// Certified values of `small` that `large` (the same tasks at a larger
/// bound) does not reproduce.
pub fn stability_differences(small: &ReportDocument, large: &ReportDocument) -> Vec<String> {
    let index: BTreeMap<(&str, usize), &TaskEntry> =
        large.entries.iter().map(|e| ((e.problem.as_str(), e.index), e)).collect();
    let mut out = Vec::new();
    for a in &small.entries {
        let Some(b) = index.get(&(a.problem.as_str(), a.index)) else {
            out.push(format!("{} #{}: missing at the larger bound", a.problem, a.index));
            continue;
        };
        let tag = format!("{} #{} {}", a.problem, a.index, a.signature());
        if let Some(d) = result_difference(&a.result, &b.result) {
            out.push(format!("{tag}: {d}"));
        }
    }
    out
}

fn common_mismatch<V: PartialEq + std::fmt::Debug>(a: &BTreeMap<i64, V>, b: &BTreeMap<i64, V>) -> Option<String> {
    a.iter()
        .find(|(i, v)| b.get(i).is_some_and(|w| w != *v))
        .map(|(i, v)| format!("index {i}: {v:?} vs {:?}", b[i]))
}

/// Tables from a larger bound extend the smaller ones, so only common
/// indices are compared.
fn same_value(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Table(x), Value::Table(y)) => common_mismatch(x, y).is_none(),
        _ => a == b,
    }
}

fn result_difference(a: &TaskResult, b: &TaskResult) -> Option<String> {
    use TaskResult as T;
    let differ = |x: String, y: String| (x != y).then(|| format!("{x} vs {y}"));
    match (a, b) {
        (T::Report(x), T::Report(y)) => match x.verdict {
            Verdict::Pass | Verdict::Fail => {
                if x.verdict != y.verdict || !same_value(&x.left, &y.left) || !same_value(&x.right, &y.right) {
                    Some(format!(
                        "{} {}={} vs {} {}={}",
                        x.verdict.as_str(),
                        value_text(&x.left),
                        value_text(&x.right),
                        y.verdict.as_str(),
                        value_text(&y.left),
                        value_text(&y.right)
                    ))
                } else {
                    None
                }
            }
            _ => None,
        },
        (T::Table(x), T::Table(y)) => common_mismatch(&x.values, &y.values),
        (T::Finiteness(x), T::Finiteness(y)) => match x.certified() {
            Some(_) => differ(format!("{:?}", x.status), format!("{:?}", y.status)),
            None => None,
        },
        (T::Int(x), T::Int(y)) => differ(x.to_string(), y.to_string()),
        (T::Bool(x), T::Bool(y)) => differ(x.to_string(), y.to_string()),
        (T::Dims(x), T::Dims(y)) => common_mismatch(x, y),
        (T::Series(x), T::Series(y)) => common_mismatch(x, y),
        (T::Homology(x), T::Homology(y)) => differ(format!("{x:?}"), format!("{y:?}")),
        (T::Certificate(x), T::Certificate(y)) => match (&x.verdict, &y.verdict) {
            (SdcVerdict::SemidualizingUpTo(_), SdcVerdict::SemidualizingUpTo(_)) => None,
            (SdcVerdict::Failed(_), SdcVerdict::Failed(_)) => None,
            _ => Some(format!("{:?} vs {:?}", x.verdict, y.verdict)),
        },
        (T::Dualizing(x), T::Dualizing(y)) => match x.status {
            DualizingStatus::Dualizing | DualizingStatus::NotSemidualizing(_) => {
                differ(format!("{:?}", x.status), format!("{:?}", y.status))
            }
            DualizingStatus::InjectiveDimensionUnknown(_) => None,
        },
        (T::Gcdim(x), T::Gcdim(y)) => match x.value {
            GcdimValue::FiniteEquals(_) | GcdimValue::Infinite(_) => {
                differ(format!("{:?}", x.value), format!("{:?}", y.value))
            }
            GcdimValue::UncertifiedUpTo(_) => None,
        },
        (T::Auslander(x), T::Auslander(y)) => match (x, y) {
            (AuslanderVerdict::MemberAtBound(_), AuslanderVerdict::MemberAtBound(_)) => None,
            (AuslanderVerdict::NotMember(_), AuslanderVerdict::NotMember(_)) => None,
            (AuslanderVerdict::Uncertified(_), _) => None,
            _ => Some(format!("{x:?} vs {y:?}")),
        },
        (T::Oracle(x), T::Oracle(y)) => {
            let n = x.betti.len().min(y.betti.len());
            (x.betti[..n] != y.betti[..n] || x.bass[..n] != y.bass[..n]).then(|| "oracle tables differ".to_string())
        }
        (T::Properties(x), T::Properties(y)) => differ(x.holds().to_string(), y.holds().to_string()),
        (T::Error(_), T::Error(_)) => None,
        (T::Error(e), _) | (_, T::Error(e)) => Some(format!("error on one side: {e}")),
        _ => Some("result kinds differ".to_string()),
    }
}
