use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("slope undefined for torsion character")]
    TorsionSlope,
    #[error("rank must be positive, got {0}")]
    NonPositiveRank(String),
    #[error("first Chern class must be at least 1, got {0}")]
    InvalidCurveDegree(i64),
    #[error("dyadic index {p}/2^{q} is not in lowest terms")]
    NonReducedDyadic { p: i64, q: u32 },
    #[error("exceptional node {0} fails the integrality check")]
    ExceptionalIntegrality(String),
    #[error("character off the discriminant grid: {0}")]
    OffGrid(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("GH case split undefined at μ = −3")]
    GhUndefined,
    #[error("no extremal character for {0}")]
    NoExtremal(String),
    #[error("extremal decomposition does not exist: {0}")]
    NoDecomposition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
