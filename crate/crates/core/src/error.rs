use thiserror::Error;

/// Errors raised by the library.
///
/// The `*Failure` variants signal internal inconsistencies: the underlying
/// mathematics guarantees they never fire on correct code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    NvarsMismatch(usize, usize),
    #[error("DuplicateLine: line {second} is proportional to line {first}")]
    DuplicateLine { first: usize, second: usize },
    #[error("ZeroForm: line {0} is the zero form")]
    ZeroForm(usize),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("BadIndex: line index {index} out of range for {len} lines")]
    BadIndex { index: usize, len: usize },
    #[error("InadmissibleLine: {0}")]
    InadmissibleLine(String),
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("FreenessCertificateFailure: {0}")]
    FreenessCertificateFailure(String),
    #[error("CertificationFailure: {0}")]
    CertificationFailure(String),
    #[error("ConsistencyFailure: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
