use thiserror::Error;

/// Problems with the user's input: the file, a flag, or a request body.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error{}: {message}", fmt_line(*.line))]
    Parse { message: String, line: Option<usize> },

    #[error("invalid {field}{}: {reason}", fmt_line(*.line))]
    Invalid {
        field: String,
        reason: String,
        line: Option<usize>,
    },
}

fn fmt_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

impl InputError {
    pub fn field(&self) -> Option<&str> {
        match self {
            InputError::Invalid { field, .. } => Some(field),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),

    #[error(transparent)]
    Core(#[from] orbitnet_core::Error),

    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_infeasible() => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.exit_code() == EXIT_INFEASIBLE {
            "infeasible"
        } else {
            "input"
        }
    }
}
