use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid '{field}': {message}")]
    Config { field: String, message: String },

    #[error("cannot parse config: {0}")]
    Parse(String),

    #[error("unknown experiment '{0}'")]
    UnknownExperiment(String),

    #[error("numerical failure: {message}")]
    Numerical { message: String, time: Option<f64> },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "config",
            CliError::Parse(_) => "parse",
            CliError::UnknownExperiment(_) => "unknown_experiment",
            CliError::Numerical { .. } => "numerical",
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        match self {
            CliError::Config { field, .. } => v["field"] = json!(field),
            CliError::Numerical { time: Some(t), .. } => v["time"] = json!(t),
            _ => {}
        }
        v.to_string()
    }
}

impl From<weno_dp::Error> for CliError {
    fn from(e: weno_dp::Error) -> Self {
        let time = match e {
            weno_dp::Error::NonFiniteStage { time, .. } => Some(time),
            _ => None,
        };
        CliError::Numerical { message: e.to_string(), time }
    }
}
