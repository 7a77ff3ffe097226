use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("monotone regime: {0}")]
    Monotone(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Monotone(_) => 4,
        }
    }
}

impl From<teleport_sr::Error> for CliError {
    fn from(e: teleport_sr::Error) -> Self {
        match e {
            teleport_sr::Error::MonotoneRegime { .. } => CliError::Monotone(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}
