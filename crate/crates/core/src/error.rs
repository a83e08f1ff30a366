use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conditioning event has probability zero")]
    ConditionOnNull,
    #[error("the model has no observers (E|X| = 0)")]
    NoObservers,
    #[error("restricted occupancy is not a subset of the occupied set on atom `{atom}`")]
    SubsetViolation { atom: String },
    #[error("event is not objective (it depends on the observer location)")]
    NotObjective,
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("colour `{0}` is never observed")]
    ColourNeverObserved(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("exact enumeration needs {atoms} atoms, above the budget of {cap}; use the Monte Carlo estimators")]
    SizeCap { atoms: u128, cap: u128 },
    #[error("PNFI requires a model with sequential structure")]
    PnfiWithoutSequentialStructure,
    #[error("occupancy graph is disconnected; the {{PN, PI, PEI}} solution set has dimension {dimension}")]
    GraphDisconnected { dimension: usize },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown event name `{0}`")]
    UnknownEvent(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("the estimator denominator is zero over the whole sample")]
    ZeroDenominator,
    #[error("every draw had no observers and was rejected")]
    AllRejected,
    #[error("spaces do not match")]
    SpaceMismatch,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
