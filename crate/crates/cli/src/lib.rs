//! Command-line front end: input grammar, commands and reports.

pub mod commands;
pub mod grammar;
pub mod report;
