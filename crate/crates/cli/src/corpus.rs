//! The built-in fixture corpus.

use crate::problem::{parse_problem, ProblemError, ProblemFile};
use crate::report::ReportDocument;
use crate::run::{run_problems, RunOptions};

/// (file name, contents)
pub const FILES: &[(&str, &str)] = &[
    ("polynomial.json", include_str!("../corpus/polynomial.json")),
    ("node.json", include_str!("../corpus/node.json")),
    ("dual_numbers.json", include_str!("../corpus/dual_numbers.json")),
    ("cubic.json", include_str!("../corpus/cubic.json")),
    ("complete_intersection.json", include_str!("../corpus/complete_intersection.json")),
    ("square_of_max.json", include_str!("../corpus/square_of_max.json")),
    ("monomial_curve.json", include_str!("../corpus/monomial_curve.json")),
    ("coordinate_lines.json", include_str!("../corpus/coordinate_lines.json")),
    ("fat_line.json", include_str!("../corpus/fat_line.json")),
    ("cusp.json", include_str!("../corpus/cusp.json")),
    ("golod.json", include_str!("../corpus/golod.json")),
    ("complexes.json", include_str!("../corpus/complexes.json")),
];

pub fn problems() -> Result<Vec<ProblemFile>, (String, ProblemError)> {
    FILES
        .iter()
        .map(|(name, text)| parse_problem(text).map_err(|e| (name.to_string(), e)))
        .collect()
}

/// Runs the selected corpus tasks.
pub fn corpus_run(opts: &RunOptions) -> Result<ReportDocument, (String, ProblemError)> {
    let ps = problems()?;
    run_problems(&ps, opts).map_err(|e| ("corpus".to_string(), e))
}
