use thiserror::Error;

/// Every failure the library can report. The display text starts with the
/// variant name so callers can match on it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonExactDivision: {0}")]
    NonExactDivision(String),
    #[error("ZeroPolynomial")]
    ZeroPolynomial,
    #[error("GeneratorMismatch: {0}")]
    GeneratorMismatch(String),
    #[error("NonPositiveCoefficient: {0}")]
    NonPositiveCoefficient(String),
    #[error("DivisionByAbsorbing")]
    DivisionByAbsorbing,
    #[error("NotSkewSymmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("SizeGuardExceeded: {0}")]
    SizeGuardExceeded(String),
    #[error("CrossCheckFailure: {0}")]
    CrossCheckFailure(String),
    #[error("RankDeficient: rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("NotInM: {0}")]
    NotInM(String),
    #[error("RankTooLarge: n = {0} exceeds 10")]
    RankTooLarge(usize),
    #[error("IncompatibleInputs: {0}")]
    IncompatibleInputs(String),
    #[error("Inconclusive: {0}")]
    Inconclusive(String),
    #[error("NotBipartite: {0}")]
    NotBipartite(String),
    #[error("NotFiniteType: {0}")]
    NotFiniteType(String),
    #[error("VerificationFailure: {0}")]
    VerificationFailure(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a failed cross-check rather than bad input.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            Error::CrossCheckFailure(_)
                | Error::VerificationFailure(_)
                | Error::NonExactDivision(_)
        )
    }
}
