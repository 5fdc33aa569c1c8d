use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` or `--version`; not a failure.
    #[error("{0}")]
    Help(String),

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(specfilt::Error),
}

impl CliError {
    /// 0 help, 1 usage, 2 I/O, 3 numerical.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn report(&self) {
        match self {
            CliError::Help(text) => print!("{text}"),
            CliError::Usage(text) => eprint!("{}", with_newline(text)),
            other => eprintln!("specfilt: {other}"),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

fn with_newline(text: &str) -> String {
    if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    }
}

impl From<specfilt::Error> for CliError {
    fn from(err: specfilt::Error) -> Self {
        if err.is_numerical() {
            CliError::Numerical(err)
        } else {
            CliError::Usage(format!("error: {err}"))
        }
    }
}
