//! Library side of the `dirichlet` binary: file formats, the group and
//! problem grammars, and one function per subcommand.

pub mod certificate;
pub mod commands;
pub mod error;
pub mod groups;
pub mod problems;

pub use error::CliError;
