use thiserror::Error;

use crate::model::AgentRef;

pub type Result<T, E = IcrError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IcrError {
    #[error("{candidate} is not acceptable to {agent}")]
    UnacceptableCandidate { agent: AgentRef, candidate: AgentRef },

    #[error("instances do not have the same shape: {0}")]
    ShapeMismatch(String),

    #[error("not a refinement: {agent} lost the comparison {better} > {worse}")]
    NotARefinement {
        agent: AgentRef,
        better: AgentRef,
        worse: AgentRef,
    },

    #[error("refinement is not reachable by interviews: {0}")]
    NotInterviewCompatible(String),

    #[error("true preferences do not refine the instance: {0}")]
    TruthInconsistent(String),

    #[error("{man} and {woman} are not mutually acceptable")]
    UnacceptablePair { man: AgentRef, woman: AgentRef },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("matching is not weakly stable under the true preferences: ({man}, {woman}) blocks it")]
    MatchingNotWeaklyStable { man: AgentRef, woman: AgentRef },

    #[error("{what} is {size}, above the cap of {cap}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("vertex {vertex} has degree {degree}, above the allowed maximum of 3")]
    DegreeTooHigh { vertex: usize, degree: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("internal assumption violated: {0}")]
    InternalAssumptionViolated(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl IcrError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        IcrError::Parse {
            line,
            message: message.into(),
        }
    }
}
