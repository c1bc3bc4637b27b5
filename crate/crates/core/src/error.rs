use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Which Wall form condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Symmetry,
    WellDefinedness,
    Polarization,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::I => "i",
            Axiom::Ii => "ii",
            Axiom::Iii => "iii",
            Axiom::Iv => "iv",
            Axiom::V => "v",
            Axiom::Vi => "vi",
            Axiom::Symmetry => "symmetry",
            Axiom::WellDefinedness => "well-definedness",
            Axiom::Polarization => "polarization",
        };
        f.write_str(s)
    }
}

/// A failed axiom together with the generators (or sampled elements) that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} violated at {}", self.axiom, self.witness)
    }
}

/// Which structure map a morphism fails to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preserved {
    Tau,
    Lambda,
    Mu,
    AlphaMinus,
    AlphaPlus,
}

impl fmt::Display for Preserved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Preserved::Tau => "tau",
            Preserved::Lambda => "lambda",
            Preserved::Mu => "mu",
            Preserved::AlphaMinus => "alpha-",
            Preserved::AlphaPlus => "alpha+",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant factors {0} are not in normal form")]
    NotNormalForm(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("bilinearity violation: {0}")]
    BilinearityViolation(String),
    #[error("H-pairs are over different groups H")]
    HMismatch,
    #[error("H-map square does not commute: {0}")]
    SquareViolation(String),
    #[error("{0}")]
    Axiom(AxiomViolation),
    #[error("morphism does not preserve {which} at {witness}")]
    PreservationViolation { which: Preserved, witness: String },
    #[error("form parameters differ")]
    ParameterMismatch,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("rank too small: need {needed}, have {have}")]
    RankTooSmall { needed: usize, have: usize },
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("simplex not found in complex")]
    SimplexNotFound,
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl From<AxiomViolation> for Error {
    fn from(v: AxiomViolation) -> Self {
        Error::Axiom(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
