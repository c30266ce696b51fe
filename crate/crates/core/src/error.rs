use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid tolerance {0}: must be finite and > 0")]
    InvalidTolerance(f64),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("Kraus list is empty")]
    EmptyKraus,

    #[error("Kraus operators are not trace preserving (max deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error("map is not completely positive (Choi eigenvalue {min_eigenvalue:e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("not a probability distribution: {0}")]
    NotAProbabilityDistribution(String),

    #[error("operator {index} is not unitary (deviation {deviation:e})")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("not a density operator: {0}")]
    NotDensityOperator(String),

    #[error("channel is not unital")]
    NotUnital,

    #[error("Bloch vector has norm {0} > 1")]
    BlochVectorTooLong(f64),

    #[error("vector is not normalized (norm {0})")]
    NotUnitVector(f64),

    #[error("algebra is not unital (zero summand of dimension {0})")]
    NotUnitalAlgebra(usize),

    #[error("algebra has no trace vectors (block with multiplicity {m} < size {n})")]
    NoTraceVectors { m: usize, n: usize },

    #[error("density operator is not an element of the algebra (distance {0:e})")]
    Rho0NotInAlgebra(f64),

    #[error("no trace vector: block {block} weight has rank {rank} > multiplicity {multiplicity}")]
    Infeasible {
        block: usize,
        rank: usize,
        multiplicity: usize,
    },
}
