use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("{0} is not a minimal (W_J, W_I) double coset representative")]
    NotDoubleCosetMinimal(String),

    #[error("basis mismatch: cannot combine elements written in different bases")]
    BasisMismatch,

    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,

    #[error("element support lies outside the morphism domain {0}")]
    SupportOutsideDomain(String),

    #[error("morphism images violate the defining relations: {0}")]
    InvalidMorphism(String),

    #[error("element {0} is not in the parabolic subgroup of the module")]
    ElementOutsideParabolic(String),

    #[error("{sub} is not a subset of {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("generator subsets {0} and {1} do not commute")]
    NonCommutingSubsets(String, String),

    #[error("{0} is not a root of x^2 - a0*x - b0")]
    InvalidScalar(String),

    #[error("modules have different parameters or generator subsets")]
    ParamMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a type A system: {0}")]
    NotTypeA(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
