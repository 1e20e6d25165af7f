use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the simulation and analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller supplied an argument that violates an operation's contract.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A numerical routine failed (non-convergence, singular matrix, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The requested register exceeds the dense-storage limit.
    #[error("register of {requested} qubits exceeds the {limit}-qubit limit")]
    Capacity { requested: usize, limit: usize },

    /// Root bracketing failed: J(T) - 1 has the same sign at both ends.
    #[error("J(T) - 1 does not change sign on [{lo_mk} mK, {hi_mk} mK] (J = {j_lo} and {j_hi})")]
    NoSignChange {
        lo_mk: f64,
        hi_mk: f64,
        j_lo: f64,
        j_hi: f64,
    },

    /// The sampled J(T) curve is not strictly decreasing on the search range.
    #[error("J(T) is not monotonically decreasing near {at_mk} mK ({j_prev} -> {j_next})")]
    NonMonotonic {
        at_mk: f64,
        j_prev: f64,
        j_next: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// An error raised inside one named stage of a scenario pipeline.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// The innermost error, looking through stage labels.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root_cause(),
            other => other,
        }
    }

    /// True for errors caused by bad input or configuration rather than by
    /// a numerical or diagnostic failure.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self.root_cause(),
            Error::Argument(_) | Error::Config(_) | Error::Capacity { .. } | Error::Io { .. }
        )
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}
