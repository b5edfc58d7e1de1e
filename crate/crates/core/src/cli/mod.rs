//! Expression parsing, the check pipeline and report emission behind the
//! `loopsing` binary.

pub mod cache;
pub mod parse;
pub mod pipeline;
pub mod report;

pub use parse::{parse_function, ParseError, ParsedFunction};
pub use pipeline::{run, Check, ConfigError, FunctionSource, OutputFormat, RunConfig};
pub use report::{CheckOutcome, Report, REPORT_SCHEMA};
