use multicirc::circulant::CirculantError;
use multicirc::dimension::DimensionError;
use multicirc::graph::GraphError;
use multicirc::intmat::MatrixError;
use multicirc::oracle::OracleError;
use multicirc::quotient::QuotientError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("{0} of the sweeps failed")]
    SweepsFailed(usize),
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Matrix(_) => "MatrixError",
            CliError::Quotient(_) => "QuotientError",
            CliError::Circulant(_) => "CirculantError",
            CliError::Dimension(_) => "DimensionError",
            CliError::Oracle(_) => "OracleError",
            CliError::Graph(_) => "GraphError",
            CliError::Io { .. } => "IoError",
            CliError::Usage { .. } => "UsageError",
            CliError::SweepsFailed(_) => "VerifyError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            _ => 1,
        }
    }
}
