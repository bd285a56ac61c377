use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators span a cone containing a line")]
    NotStronglyConvex,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("complexes live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("ray index {0} is not a ray of the complex")]
    RayNotInComplex(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported ambient dimension {0}")]
    UnsupportedDimension(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unbounded direction {0} is not a ray of the fan")]
    NonparallelRay(String),
    #[error("cone complex is not the cone over a 1-complex: {0}")]
    NotConeOverGraph(String),
    #[error("not a refinement: {0}")]
    NotARefinement(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no point of the cone realizes the combinatorial type")]
    EmptyInterior,
    #[error("budget of {0} cells exceeded")]
    BudgetExceeded(usize),
    #[error("group action does not preserve the subcomplex")]
    NotStable,
    #[error("graph family is not closed under image surjections: {0}")]
    NotClosed(String),
    #[error("subdivision is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("face mismatch: {0}")]
    FaceMismatch(String),
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("subdivision is not regular")]
    NotRegular,
    #[error("height vector is not interior to the secondary cone")]
    NotInterior,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
