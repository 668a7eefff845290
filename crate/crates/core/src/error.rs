use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed group element {element:?} for group with orders {orders:?}")]
    MalformedElement { element: Vec<i64>, orders: Vec<u64> },
    #[error("group order {0} is not positive")]
    BadGroup(i64),
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("edge `{0}` is not a loop")]
    NotALoop(String),
    #[error("path is not composable at step {0}")]
    NonComposablePath(usize),
    #[error("edge length for `{0}` must be positive")]
    NonPositiveLength(String),
    #[error("cover spec has dilated vertices; L-functions need a free cover")]
    DilatedSpec,
    #[error("the trivial character is not allowed here")]
    TrivialCharacter,
    #[error("character index {index} out of range for a group of order {order}")]
    CharacterOutOfRange { index: usize, order: u64 },
    #[error("the cover is trivial")]
    TrivialCover,
    #[error("edge subset is not a basis")]
    NotABasis,
    #[error("genus {0} is below the supported range")]
    GenusTooSmall(i64),
    #[error("path length bound {0} exceeds the supported maximum of 12")]
    BoundExceeded(usize),
    #[error("invalid spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
