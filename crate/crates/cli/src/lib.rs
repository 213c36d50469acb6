//! Problem files, polynomial expression parsing, and the `hk` command driver.

pub mod expr;
pub mod problem;
pub mod run;

pub use expr::{parse_polynomial, ExprError, ExprErrorKind};
pub use problem::{parse_problem, HomogeneityPolicy, InputError, Problem, ProblemOptions, DEFAULT_DEGREE_BUDGET};
pub use run::{canonical_json, emit, execute, exit_code, run, Check, Command, Format, Report, RunError, RunFlags};
