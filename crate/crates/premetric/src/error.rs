use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a partial order: cycle through {0:?}")]
    NotAPartialOrder(Vec<String>),
    #[error("not a lattice: elements {0:?} and {1:?} have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("element {0:?} is not in the lattice")]
    ElementNotInLattice(String),
    #[error("value {0:?} does not belong to the declared lattice")]
    ValueKindMismatch(String),
    #[error("lattice is not value distributive: {0}")]
    NotValueDistributive(String),
    #[error("value set of the lattice cannot be enumerated (infinite)")]
    InfiniteValueSet,
    #[error("id {0:?} is not in the ground set")]
    IdNotInGround(String),
    #[error("operands live over different ground sets")]
    GroundMismatch,
    #[error("ground of size {0} exceeds the limit {1}")]
    GroundTooLarge(usize, usize),
    #[error("epsilon {0:?} is not well above bottom")]
    EpsNotPositive(String),
    #[error("point {0:?} is not in the point set")]
    PointNotInSpace(String),
    #[error("point {0:?} is not in the image of the instance map")]
    PointNotInImage(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("distance d({0:?},{0:?}) must be bottom, got {1:?}")]
    NonzeroDiagonal(String, String),
    #[error("missing distance entry for ({0:?},{1:?})")]
    MissingDistance(String, String),
    #[error("n = {0} exceeds the enumeration limit {1}")]
    NTooLarge(usize, usize),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("assignment is not total: no image for {0:?}")]
    PartialAssignment(String),
    #[error("relation is not an equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("probe with {0} points and target with {1} points is too large to enumerate")]
    ProbeTooLarge(usize, usize),
    #[error("function ground of size {0} exceeds the limit {1} (shrink the point set or the value lattice)")]
    FunctionGroundTooLarge(usize, usize),
    #[error("malformed rational literal {0:?} (expected \"p/q\", \"p\" or \"inf\")")]
    BadRational(String),
    #[error("malformed input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
