use std::path::PathBuf;

use crate::config::ConfigError;

/// Everything the front end can fail with. Exit code 2 means the request was
/// wrong, 3 means the numerics broke during a run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unknown figure `{0}`; known figures: {list}", list = crate::presets::FIGURE_IDS.join(", "))]
    UnknownFigure(String),
    #[error("numerical failure: {0}")]
    Numerical(entdyn_core::Error),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error("invalid thread count: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl From<entdyn_core::Error> for CliError {
    fn from(e: entdyn_core::Error) -> Self {
        match e {
            entdyn_core::Error::ParameterOutOfRange { name, value } => CliError::Config(ConfigError::Invalid {
                key: name.to_string(),
                value: value.to_string(),
                reason: "out of range".into(),
            }),
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}
