//! Front end for the `hdepth` command: problem and partition files,
//! reports, and the command driver.

pub mod app;
pub mod partition;
pub mod problem;
pub mod report;

pub use app::{bench_max_ideal, run, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, EXIT_PARSE};
pub use partition::{parse_partition, partition_lines, print_partition};
pub use problem::{format_monomial, format_series, parse_problem, print_problem, ProblemFile, Target};
pub use report::{BenchReport, BenchRow, Format, Kind, RowStatus, RunReport};

/// A syntax or validation error in an input file, with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}
