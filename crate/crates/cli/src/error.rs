use blockenc::BlockEncodingError;
use molham::MolhamError;
use wht::WhtError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Parse(String),
    #[error("tolerance failure: {0}")]
    Tolerance(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Io(_) => 2,
            Self::Parse(_) => 3,
            Self::Tolerance(_) => 4,
        }
    }
}

impl From<WhtError> for CliError {
    fn from(e: WhtError) -> Self {
        match e {
            WhtError::Parse { .. }
            | WhtError::SampleRange { .. }
            | WhtError::NotPowerOfTwo(_)
            | WhtError::LengthMismatch { .. } => Self::Parse(e.to_string()),
            WhtError::Io(e) => Self::Io(e),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<MolhamError> for CliError {
    fn from(e: MolhamError) -> Self {
        match e {
            MolhamError::Fit(_) => Self::Parse(e.to_string()),
            MolhamError::BlockEncoding(_) => Self::Tolerance(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<BlockEncodingError> for CliError {
    fn from(e: BlockEncodingError) -> Self {
        match e {
            BlockEncodingError::Parse { .. } => Self::Parse(e.to_string()),
            BlockEncodingError::Residual(_)
            | BlockEncodingError::NotUnitary(_)
            | BlockEncodingError::QromMismatch { .. }
            | BlockEncodingError::Symmetry(_) => Self::Tolerance(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<dvr::DvrError> for CliError {
    fn from(e: dvr::DvrError) -> Self {
        match e {
            dvr::DvrError::Io(e) => Self::Io(e),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<qrom::QromError> for CliError {
    fn from(e: qrom::QromError) -> Self {
        Self::Tolerance(e.to_string())
    }
}

impl From<baseline::BaselineError> for CliError {
    fn from(e: baseline::BaselineError) -> Self {
        Self::Config(e.to_string())
    }
}
