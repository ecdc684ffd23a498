//! Library side of the `trigsolve` CLI: argument types, document schemas,
//! the seeded system generator, and the subcommand implementations. The
//! binary in `main.rs` is a thin clap wrapper over [`commands`].

pub mod commands;
pub mod gen;
pub mod schema;

pub use commands::{BatchArgs, IkArgs, OracleArgs, OutputFormat, RandomArgs, SolveArgs};
