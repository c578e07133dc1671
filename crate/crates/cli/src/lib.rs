//! The `.rsm` script language: parsing, resolution, execution and reports.
//!
//! ```
//! let report = relsmooth::run("ring B = Q[t]\nring A = Q[t,u] / (t*u - 1)\nmap f : B -> A { t -> t }\ncompute relgldim f", &Default::default()).unwrap();
//! assert_eq!(report.results[0]["result"]["rel_gldim"]["tag"], "finite");
//! ```

pub mod ast;
pub mod exec;
pub mod parser;

pub use ast::Script;
pub use exec::{execute, Options, Report};
pub use parser::{parse, ParseError};

/// Parses and executes a script.
pub fn run(text: &str, options: &Options) -> Result<Report, ParseError> {
    Ok(execute(&parse(text)?, options))
}

/// Process exit status for a finished run: 0 when every entry succeeded,
/// 1 otherwise. Parse errors exit with 2 before anything runs.
pub fn exit_code(report: &Report) -> i32 {
    i32::from(report.has_errors())
}
