use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants split into two families: input/usage problems (`Syntax`,
/// `UnknownVariable`, `UnknownEntry`, `BadParams`, `BadInput`) and
/// computational failures. The CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in ring")]
    DuplicateVariable(String),
    #[error("divided difference is not exactly divisible (internal error): {0}")]
    NonDivisible(String),
    #[error("divided difference needs at least one argument")]
    EmptyArgs,
    #[error("polynomial has degree zero in `{0}`")]
    ZeroDegree(String),
    #[error("resource limit exceeded: more than {0} reduction steps")]
    ResourceLimit(u64),
    #[error("singularity is not isolated (infinite colength)")]
    NonIsolated,
    #[error("germ is not at the origin: {0}")]
    NotAtOrigin(String),
    #[error("not an isolated complete intersection: {0}")]
    NotIcis(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("germ is not in corank-1 normal form: {0}")]
    NotNormalForm(String),
    #[error("germ is not corank 1: differential at 0 has rank {rank}, expected {expected}")]
    NotCorankOne { rank: usize, expected: usize },
    #[error("formula `{formula}` is not integral ({value}): invalid invariant tuple")]
    NonIntegralChi { formula: String, value: String },
    #[error("image Milnor number is negative ({0}): invalid invariant tuple")]
    NegativeMuI(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("coefficient {0} is not representable in the prime field")]
    NotInField(String),
    #[error("{space}: {source}")]
    InSpace {
        space: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors caused by malformed input rather than by the computation.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::DuplicateVariable(_)
            | Error::UnknownEntry(_)
            | Error::BadParams(_)
            | Error::BadInput(_) => true,
            Error::InSpace { source, .. } => source.is_usage(),
            _ => false,
        }
    }

    pub(crate) fn in_space(self, space: impl Into<String>) -> Error {
        Error::InSpace {
            space: space.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
