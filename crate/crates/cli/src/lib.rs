//! File format and subcommands behind the `polysym` binary.

pub mod commands;
pub mod polyfile;
