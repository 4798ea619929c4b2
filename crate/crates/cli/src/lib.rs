//! Command-line front-end for `fillmore-core`: JSON problem and solution
//! documents, the `solve`, `verify`, `demo` and `gen` commands, and the
//! exit-code contract (0 verified, 1 precondition, 2 parse, 3 verification).

pub mod commands;
pub mod demo;
pub mod document;
pub mod error;
mod locate;

pub use error::CliError;
