//! Report building for the `cospectral` command-line tool.

pub mod commands;
pub mod report;
pub mod spec_file;
