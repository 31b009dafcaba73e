//! Front end for `fwdiff-core`: the ring file format, result documents and
//! the subcommands of the `fwdiff` binary.

pub mod commands;
pub mod document;
pub mod parse;

pub use commands::{run, Cli, Command, Outcome};
pub use parse::{parse_ring, ParseError, RingFile};
