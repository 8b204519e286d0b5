//! Model files, a count cache and the command implementations behind the
//! `fibreprod` binary.

pub mod cache;
pub mod data;
pub mod error;
pub mod run;

pub use error::{CliError, Result};
