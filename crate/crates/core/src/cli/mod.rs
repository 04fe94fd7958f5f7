//! Command-line front end: group-spec DSL, reports, result cache and
//! catalog runs.

pub mod cache;
pub mod catalog;
mod commands;
pub mod config;
pub mod dsl;

pub use commands::{run, Cli, Command, OrderRange, TheoremId, UnitForm};
