//! Library side of the `nzc` command-line tool.

pub mod commands;
pub mod config;
pub mod export;
pub mod verify;

pub use commands::{exit_code, build_graph};
pub use config::{Engine, FileConfig, Format, InclusiveRange, RunConfig, CONFIG_ENV};
pub use verify::{verify, verify_instance, Certificate, InstanceCertificate};
