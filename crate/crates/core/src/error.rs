use thiserror::Error;

use crate::lattice::LatticeError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot subtract {rhs} from {lhs}: not componentwise below")]
    InvalidSubtraction { lhs: String, rhs: String },

    #[error("element index {0} is not in the lattice")]
    ElementOutOfRange(usize),

    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),

    #[error("operands are defined over different lattices")]
    LatticeMismatch,

    #[error("encoding needs one coordinate per lattice element: dimension {dimension}, lattice size {elements}")]
    NotAnEncoding { dimension: usize, elements: usize },

    #[error("complement grid has {size} points, above the limit of {limit}")]
    GridTooLarge { size: u128, limit: u128 },

    #[error("HC8 can only be decided for functions satisfying HC2")]
    Hc2Required,

    #[error("reduction needs a function satisfying HC1 and HC2")]
    NotReducible,

    #[error("learning did not converge within {0} rounds")]
    RoundLimit(usize),

    #[error("oracle is not antitone: {0}")]
    InconsistentOracle(String),

    #[error("no counterexample found below {point} within {probes} probes")]
    SearchExhausted { point: String, probes: usize },

    #[error("unknown example `{0}` (expected div52, B or B7)")]
    UnknownExample(String),
}
