//! Batch checker for modulus-pair scripts: parse, run, report.

pub mod ast;
pub mod parse;
pub mod print;
pub mod report;
pub mod run;

pub use ast::Script;
pub use parse::{parse, ParseError};
pub use report::{CommandError, Entry, Report};
pub use run::{run, Options};

/// Parses and runs `src`. A parse error is returned as is; everything after
/// parsing ends up in the report.
pub fn run_source(src: &str, opts: &Options) -> Result<Report, ParseError> {
    Ok(run(&parse(src)?, opts))
}
