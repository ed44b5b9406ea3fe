//! Command-line front end: a set-definition language, commands over every
//! core module, and CSV / JSON-lines reporting.

pub mod app;
pub mod dsl;
pub mod suites;

pub use app::{run, Outcome};
pub use dsl::{parse, SetExpr, SyntaxError};
