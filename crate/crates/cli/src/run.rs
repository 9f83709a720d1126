//! Running problems: task selection, parallel execution and report assembly.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use gradhom::{Field, Fp, Rationals};

use crate::build::{build_env, Env};
use crate::ops::{execute, TaskResult};
use crate::problem::{with_field, FieldSpec, ProblemError, ProblemFile, Task};
use crate::report::{expectation_met, status_of, ProblemInfo, ReportDocument, Status, Summary, TaskEntry, ENGINE, SCHEMA};

pub const DEFAULT_BOUND: usize = 10;

/// Task selection from `theorem=ID`, `op=NAME`, `problem=TEXT` and
/// `label=TEXT` terms. A bare term matches an op name or theorem id exactly,
/// or a problem name or label as a substring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filter {
    terms: Vec<(Option<String>, String)>,
}

impl Filter {
    /// Comma separated terms, all of which must match.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut terms = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => {
                    let k = k.trim();
                    if !["theorem", "op", "problem", "label"].contains(&k) {
                        return Err(format!("unknown filter key {k:?}"));
                    }
                    terms.push((Some(k.to_string()), v.trim().to_string()));
                }
                None => terms.push((None, part.to_string())),
            }
        }
        Ok(Filter { terms })
    }

    pub fn all() -> Self {
        Filter::default()
    }

    pub fn matches(&self, problem: &str, task: &Task) -> bool {
        let theorem = task.op.theorem().unwrap_or("");
        let label = task.label.as_deref().unwrap_or("");
        self.terms.iter().all(|(k, v)| match k.as_deref() {
            Some("theorem") => theorem == v,
            Some("op") => task.op.name() == v,
            Some("problem") => problem.contains(v.as_str()),
            Some("label") => label.contains(v.as_str()),
            _ => {
                task.op.name() == v
                    || theorem == v
                    || problem.contains(v.as_str())
                    || label.contains(v.as_str())
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub bound: usize,
    /// Every task bound is multiplied by this.
    pub scale: usize,
    pub seed: u64,
    pub field: Option<FieldSpec>,
    pub filter: Filter,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            bound: DEFAULT_BOUND,
            scale: 1,
            seed: 0,
            field: None,
            filter: Filter::all(),
        }
    }
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn entry(pf: &ProblemFile, task: &Task, bound: usize, result: TaskResult, micros: u64) -> TaskEntry {
    let mut status = status_of(&result);
    let met = task.expect.as_ref().map(|e| expectation_met(e, status, &result));
    if met == Some(false) {
        status = Status::Fail;
    }
    TaskEntry {
        problem: pf.name.clone(),
        index: task.index,
        label: task.label.clone(),
        op: task.op.name().to_string(),
        args: task.args.clone(),
        theorem: task.op.theorem().map(str::to_string),
        bound,
        status,
        result,
        expect: task.expect.clone(),
        expectation_met: met,
        micros,
    }
}

fn run_in<K: Field>(env: &Env<K>, pf: &ProblemFile, opts: &RunOptions) -> Vec<TaskEntry> {
    let selected: Vec<&Task> = pf.tasks.iter().filter(|t| opts.filter.matches(&pf.name, t)).collect();
    selected
        .par_iter()
        .map(|task| {
            let bound = task.bound.or(pf.raw.bound).unwrap_or(opts.bound) * opts.scale.max(1);
            let start = Instant::now();
            let result = catch_unwind(AssertUnwindSafe(|| execute(env, task, bound, opts.seed)))
                .unwrap_or_else(|p| Err(format!("internal error: {}", panic_text(p))))
                .unwrap_or_else(TaskResult::Error);
            entry(pf, task, bound, result, start.elapsed().as_micros() as u64)
        })
        .collect()
}

fn run_problem(pf: &ProblemFile, opts: &RunOptions) -> Result<(ProblemInfo, Vec<TaskEntry>), ProblemError> {
    let pf = match opts.field {
        Some(f) => &with_field(pf.clone(), f)?,
        None => pf,
    };
    let info = ProblemInfo {
        name: pf.name.clone(),
        field: pf.raw.field.describe(),
        ring: pf.raw.ring.describe(),
    };
    let entries = match pf.raw.field {
        FieldSpec::Prime(p) => {
            let f = Fp::new(p).map_err(|e| ProblemError::invalid("field", e))?;
            run_in(&build_env(f, pf)?, pf, opts)
        }
        FieldSpec::Rational => run_in(&build_env(Rationals, pf)?, pf, opts),
    };
    Ok((info, entries))
}

/// Runs the selected tasks of several problems. Entries keep file order
/// and task order.
pub fn run_problems(problems: &[ProblemFile], opts: &RunOptions) -> Result<ReportDocument, ProblemError> {
    let start = Instant::now();
    let parts = problems
        .par_iter()
        .map(|pf| run_problem(pf, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut infos = Vec::new();
    let mut entries = Vec::new();
    for (info, es) in parts {
        if !es.is_empty() {
            infos.push(info);
        }
        entries.extend(es);
    }
    Ok(ReportDocument {
        schema: SCHEMA.to_string(),
        engine: ENGINE.to_string(),
        problems: infos,
        default_bound: opts.bound,
        bound_scale: opts.scale.max(1),
        seed: opts.seed,
        summary: Summary::of(&entries),
        entries,
        micros: start.elapsed().as_micros() as u64,
    })
}

pub fn run_tasks(pf: &ProblemFile, opts: &RunOptions) -> Result<ReportDocument, ProblemError> {
    run_problems(std::slice::from_ref(pf), opts)
}
