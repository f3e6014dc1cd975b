//! File formats and subcommands behind the `sepfaces` binary.

pub mod commands;
pub mod format;
