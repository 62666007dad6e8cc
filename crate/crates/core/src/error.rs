use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {from} does not divide {to}")]
    IncompatibleOrder { from: u32, to: u32 },
    #[error("point {index} is not a root of the binary form")]
    NotARoot { index: usize },
    #[error("image of root {index} is not in the root list")]
    NotClosed { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no scalar power found up to exponent {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("operator does not have finite order")]
    NotFiniteOrder,
    #[error("group closure exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("relation {index} has a non-scalar discrepancy")]
    NonScalarDiscrepancy { index: usize },
    #[error("relation {index} fails projectively")]
    RelationsFailProjectively { index: usize },
    #[error("generator labels do not match: {0}")]
    LabelMismatch(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("closure has not been computed")]
    ClosureMissing,
    #[error("generator `{label}` is not a symmetry of the pencil")]
    NotASymmetry { label: String },
    #[error("group is not abelian: `{0}` and `{1}` do not commute")]
    NotAbelian(String, String),
    #[error("pencil or element is not diagonal")]
    NotDiagonal,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("signed permutation has an odd number of sign changes")]
    OddParity,
    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost error, looking through stage tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for inputs the library cannot decide, as opposed to malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self.root(),
            Error::Unsupported(_) | Error::CapExceeded { .. } | Error::OrderExceedsCap { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
