//! Scenario files, command implementations and the local scene service
//! behind the `orbitnet` binary.

pub mod cli;
pub mod commands;
pub mod error;
pub mod scenario_file;
pub mod service;

pub use error::{CliError, InputError};
pub use scenario_file::{load_path, load_str, LoadedScenario, ScenarioFile};
