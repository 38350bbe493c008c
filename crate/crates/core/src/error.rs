use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no points")]
    NoPoints,
    #[error("degenerate input: at least 2 distinct points are required")]
    DegenerateInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("point or direction is not in the affine hull")]
    NotInAffineHull,
    #[error("oracle bound exceeded: {vertices} vertices, bound {bound}")]
    OracleBoundExceeded { vertices: usize, bound: usize },
    #[error("unsatisfiable family: {0}")]
    Unsatisfiable(String),
    #[error("invalid family spec {0:?}")]
    BadFamily(String),
    #[error("Schlegel requires d ≥ 3 (got d = {0})")]
    SchlegelDimension(usize),
    #[error("diagram output supports d = 3 or 4 (got d = {0})")]
    DiagramDimension(usize),
    #[error("facet index {index} out of range ({count} facets)")]
    FacetIndex { index: usize, count: usize },
    #[error("direction is zero")]
    ZeroDirection,
    #[error("apex not exterior")]
    ApexNotExterior,
    #[error("screen does not separate the apex from the polytope")]
    InadmissibleScreen,
    #[error("no general direction found after {0} attempts")]
    NoGeneralDirection(usize),
    #[error("general position violated: {0}")]
    GeneralPositionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
