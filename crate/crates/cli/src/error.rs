use cheby_ramsey_core::format::FormatError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }

    pub fn from_format(origin: &str, e: FormatError) -> Self {
        match e {
            FormatError::Parse(p) => {
                CliError::Parse { origin: origin.to_string(), line: p.line, column: p.column, message: p.message }
            }
            other => CliError::Invalid(format!("{origin}: {other}")),
        }
    }
}
