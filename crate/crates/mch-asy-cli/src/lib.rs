//! Configuration, scanning and output for the `mch-asy` command-line tool.

pub mod config;
pub mod output;
pub mod scan;

pub use config::{parse_config, RunConfig};
pub use output::write_output;
pub use scan::{run_scan, Mode, Table};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Strict(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Strict(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}
