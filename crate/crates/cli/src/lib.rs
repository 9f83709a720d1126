//! Problem-file driver for `gradhom`: parsing, validation, execution and
//! reports, plus the built-in fixture corpus.

pub mod build;
pub mod corpus;
pub mod ops;
pub mod problem;
pub mod report;
pub mod run;

pub use problem::{parse_problem, FieldSpec, ProblemError, ProblemFile};
pub use report::{stability_differences, ReportDocument, Status, TaskEntry};
pub use run::{run_problems, run_tasks, Filter, RunOptions, DEFAULT_BOUND};
