use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: |alpha|^2 + |beta|^2 = {norm_sqr}")]
    Unnormalized { norm_sqr: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid conditional distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("signal amplitude {amplitude} is not below threshold {threshold}; theorem predicates need a subthreshold channel")]
    Suprathreshold { amplitude: f64, threshold: f64 },

    #[error("detection probability difference {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("Werner fidelity {0} is outside [0, 1]")]
    InvalidResource(f64),

    #[error("invalid scale grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("noise center {center} lies inside the forbidden interval ({lo}, {hi}); fidelity is monotone in the noise scale")]
    MonotoneRegime { center: f64, lo: f64, hi: f64 },

    #[error("{0} has no closed-form CDF; use the empirical mode")]
    NoClosedForm(String),
}
