use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leaf set is empty")]
    EmptyLeafSet,
    #[error("invalid leaf name `{name}`: {reason}")]
    InvalidLeafName { name: String, reason: &'static str },
    #[error("duplicate leaf name `{0}`")]
    DuplicateLeaf(String),
    #[error("unknown leaf `{0}`")]
    UnknownLeaf(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("operands are defined over different leaf sets")]
    LeafSetMismatch,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("condition X1 is violated; the canonical graph is not a DAG on the leaf set")]
    X1Violated,
    #[error("relation is not realizable")]
    NotRealizable,
    #[error("incomparability constraint relates {0} to itself")]
    SelfIncomparability(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
