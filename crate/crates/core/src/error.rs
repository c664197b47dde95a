use thiserror::Error;

use crate::space::MeasurableSet;
use crate::witness::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative value {0} (all values must lie in [0, inf])")]
    NegativeValue(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("a measurable space needs at least one atom")]
    EmptySpace,
    #[error("duplicate atom name {0:?}")]
    DuplicateAtom(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("set {{{0}}} is not a union of algebra atoms")]
    NotMeasurable(String),
    #[error("{atoms} algebra atoms exceed the limit of {limit} for this operation")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("operands live on different measurable spaces")]
    SpaceMismatch,
    #[error("not a monotone measure: {0}")]
    InvalidMeasure(Witness),
    #[error("explicit table has no entry for {{{0}}}")]
    MissingEntry(String),
    #[error("wrong number of values: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid decomposition family: {0}")]
    InvalidFamily(String),
    #[error("precondition failed: {0} is infinite")]
    InfiniteValue(String),
    #[error("measure {0} is not additive")]
    NotAdditive(String),
    #[error("mu is not absolutely continuous w.r.t. nu (nu(A) = 0 < mu(A) at {witness:?})")]
    NotAbsolutelyContinuous { witness: MeasurableSet },
    #[error("{path}: {source}")]
    Spec { path: String, source: Box<Error> },
    #[error("truncation model: {0}")]
    Truncation(String),
    #[error("derivatives on U_{larger} and U_{smaller} disagree on atoms {atoms:?} (nu-null: {nu_null})")]
    IncompatibleTruncations {
        smaller: usize,
        larger: usize,
        atoms: Vec<usize>,
        nu_null: bool,
    },
}
