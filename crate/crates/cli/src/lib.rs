//! Input language and session runner for the `diffleaf` command.
//!
//! A script is a sequence of lines, each a declaration (`ring`, `der`, `hs`,
//! `ideal`, `scheme`, `open`, `proj`) or a command. Commands print
//! `NAME: value [status]`.

pub mod ast;
pub mod parser;
pub mod session;

pub use ast::{Command, Expr, FieldSpec, IdealRef, OpenSpec, Statement};
pub use parser::{parse_line, parse_script, Located, SyntaxError};
pub use session::{run, Entry, Options, Report, Session};

/// Canonical text of a parsed script, one statement per line.
pub fn print_script(statements: &[Located]) -> String {
    statements.iter().map(|l| format!("{}\n", l.statement)).collect()
}
