use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("probability out of range: {0}")]
    ProbabilityRange(String),
    #[error("vector is not a unit vector (norm {0})")]
    NotUnitVector(f64),
    #[error("amplitudes are not normalised (sum of squares {0})")]
    NotNormalized(f64),
    #[error("Kraus operators violate completeness (defect {0:.3e})")]
    Incomplete(f64),
    #[error("Kraus list is empty")]
    EmptyKraus,
    #[error("vacuum amplitude count {amplitudes} does not match Kraus count {kraus}")]
    AmplitudeCount { amplitudes: usize, kraus: usize },
    #[error("coherence factor gamma = {0} outside [0, 1]")]
    GammaRange(f64),
    #[error("vacuum interference operator has no eigenvalue-1 eigenspace (largest singular value {0})")]
    NoUnitEigenvalue(f64),
    #[error("channel iteration did not reach a unique fixed point")]
    NoFixedPoint,
    #[error("transition matrix is not row-stochastic: {0}")]
    NotStochastic(String),
    #[error("iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("chain is empty")]
    EmptyChain,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Configuration and input problems, as opposed to numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ProbabilityRange(_)
                | Error::NotUnitVector(_)
                | Error::NotNormalized(_)
                | Error::GammaRange(_)
                | Error::EmptyChain
                | Error::InvalidConfig(_)
                | Error::AmplitudeCount { .. }
                | Error::DimensionMismatch(_)
        )
    }
}

pub(crate) fn check_probability(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::ProbabilityRange(format!("{name} = {x}")))
    }
}
