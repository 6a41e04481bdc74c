use thiserror::Error;

use crate::picard::WeightTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0} is invalid, every weight must be at least 2")]
    InvalidWeight(i64),

    #[error("weight triples differ: {0} vs {1}")]
    MixedWeights(WeightTriple, WeightTriple),

    #[error("interior {0} lies outside the fundamental cuboid")]
    NotInCuboid(String),

    #[error("expression has suspension exponent {0}, expected 0")]
    NonZeroSuspension(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("class of {0} is not reducible to the cuboid basis")]
    NotReducible(String),

    #[error("invalid symbol `{0}`")]
    InvalidSymbol(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("{regime} predicate needs {required}, got Euler characteristic {chi}")]
    WrongRegime {
        regime: &'static str,
        required: &'static str,
        chi: String,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
