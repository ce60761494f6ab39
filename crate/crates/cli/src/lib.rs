//! Command-line front end: expression language, workspace files and subcommands.

pub mod app;
pub mod eval;
pub mod expr;
pub mod polyparse;
pub mod workspace;

pub use app::{run, Outcome};
