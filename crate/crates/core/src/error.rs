use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("malformed syntax: {0}")]
    MalformedSyntax(String),
    #[error("alignment violation at symbol {position}: '{first}' followed by '{second}'")]
    AlignmentViolation {
        position: usize,
        first: char,
        second: char,
    },
    #[error("cycle does not alternate alignment (including wrap-around): {0}")]
    NonAlternatingCycle(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("no origin marked in '{0}'")]
    NoOrigin(String),
    #[error("more than one origin marked in '{0}'")]
    MultipleOrigins(String),
    #[error("operation requires a centred permutation of length at least 1")]
    EmptyPermutation,
    #[error("point {k} is not interior to a word of length {n}")]
    NotInterior { k: usize, n: usize },
    #[error("element {0} of the decomposition is not box-indecomposable")]
    NonIndecomposableElement(String),

    #[error("division by zero")]
    DivisionByZero,
    #[error("Seq requires a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("rational function has a pole at z = 0")]
    PoleAtZero,

    #[error("counts failed to stabilise: {0}")]
    StabilizationFailure(String),
    #[error("G-sequence coefficient bound violated: {0}")]
    BoundViolation(String),
    #[error("pin sequence {0} is not recurrent; use closure or interior mode")]
    NotRecurrent(String),
    #[error("quadrant set {0} is not connected under adjacency")]
    DisconnectedQuadrants(String),
    #[error("no root in (0, 1/2] for {0}")]
    NoRootInRange(String),
    #[error("classification tables disagree with direct enumeration: {0}")]
    TableMismatch(String),
    #[error("singularity of G(z) precedes the growth-rate root: {0}")]
    EarlySingularity(String),

    #[error("subset census did not converge: {0}")]
    ConvergenceNotReached(String),
    #[error("census exceeds the memory guard of {limit} retained permutations")]
    MemoryGuard { limit: usize },
    #[error("argument outside the supported range: {0}")]
    OutOfSupportedRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
