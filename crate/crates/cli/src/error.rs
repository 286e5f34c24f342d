use std::path::PathBuf;
use thiserror::Error;

/// One problem found while parsing a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    /// 1-based source line; 0 when the problem is a missing section or key.
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            f.write_str(&self.message)
        }
    }
}

fn join(issues: &[ConfigIssue]) -> String {
    issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid configuration:\n{}", join(.0))]
    Config(Vec<ConfigIssue>),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: malformed file: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] skyrmelab::Error),
}

impl LabError {
    pub fn config(message: impl Into<String>) -> Self {
        Self::Config(vec![ConfigIssue { line: 0, message: message.into() }])
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// Process exit status: 2 for configuration problems, 3 for I/O, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Core(skyrmelab::Error::Config(_) | skyrmelab::Error::Domain(_)) => 2,
            Self::Io { .. } | Self::Format { .. } => 3,
            Self::Core(_) => 1,
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;
