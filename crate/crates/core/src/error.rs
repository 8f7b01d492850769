use crate::spectra::MatrixClass;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("eigenvalues are not closed under complex conjugation")]
    NotConjugateClosed,
    #[error("no {class} result covers complex spectra")]
    ClassSpectrumMismatch { class: MatrixClass },
    #[error("omega1 = {omega1} is outside the feasible range [{lo}, {hi}]")]
    OutOfRange { omega1: f64, lo: f64, hi: f64 },
    #[error("negative radicand {value} in {context}")]
    NegativeRadicand { context: &'static str, value: f64 },
    #[error("spectrum lies outside the region R")]
    OutsideRegion,
    #[error("{class} conditions fail: {}", failed.join("; "))]
    InfeasibleInput { class: MatrixClass, failed: Vec<String> },
    #[error("entry ({row}, {col}) = {value} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("cannot normalize: lambda1 = {0} is not positive")]
    NonPositiveScale(f64),
    #[error("spectrum is not realizable for {class}")]
    EmptyRange { class: MatrixClass },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
