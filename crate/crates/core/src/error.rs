//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by exact-arithmetic operations and system verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("eigenvalue list contains repeated values")]
    RepeatedEigenvalues,

    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),

    #[error("system is not sharp: rank(E*_0) = {0}, expected 1")]
    NotSharp(usize),

    #[error("thin construction requires zeta_i != 0; zeta_{0} = 0")]
    ZeroZeta(usize),

    #[error("eigenvalues are not the normalized geometric sequences q^(2i-d), q^(d-2i): {0}")]
    NonGeometric(String),

    #[error("split formula did not produce a decomposition: {0}")]
    NotDecomposition(String),

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("invalid parameter array: {0}")]
    InvalidParameterArray(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("ladder map does not act as a scalar on U_0")]
    NonScalarLadder,

    #[error("perturbation requires diameter d >= 1")]
    DiameterZero,

    #[error("perturbed system broke a structural guarantee: {0}")]
    PerturbationStructure(String),

    #[error("theorem mismatch at t = {t}: predicted {predicted}, actual {actual}")]
    TheoremMismatch {
        t: String,
        predicted: bool,
        actual: bool,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
