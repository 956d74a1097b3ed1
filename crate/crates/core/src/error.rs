use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate zonotope: generators do not span R^3")]
    DegenerateZonotope,
    #[error("zero segment at generator {0}")]
    ZeroSegment(usize),
    #[error("full-rank lattice required")]
    FullRankRequired,
    #[error("lattice basis is linearly dependent")]
    DependentBasis,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("not a sublattice")]
    NotSublattice,
    #[error("degenerate frame: e, tau1, tau2 are linearly dependent")]
    DegenerateFrame,
    #[error("periodic description required")]
    PeriodicRequired,
    #[error("empty frame list")]
    EmptyFrames,
    #[error("theorem contradiction, implementation bug: {0}")]
    TheoremContradiction(String),
    #[error("zonotope is not two-flat")]
    NotTwoFlat,
    #[error("the first flat's generators do not span a plane")]
    FlatNotSpanned,
    #[error("resample: point lies on the boundary of a translate")]
    Resample,
    #[error("coset representatives do not contain the line generated by gamma_1")]
    CosetLineMissing,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
