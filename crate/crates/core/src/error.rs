use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a structure of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("order {order} exceeds the supported maximum of {max} vertices")]
    TooManyVertices { order: usize, max: usize },

    #[error("edge {edge} has fewer than two vertices")]
    EdgeTooSmall { edge: VertexSet },

    #[error("hypergraph is not 3-uniform")]
    NotThreeUniform,

    #[error("order {order} exceeds the brute-force bound of {bound} vertices")]
    Capacity { order: usize, bound: usize },

    #[error("invalid tournament: {0}")]
    InvalidTournament(String),

    #[error("not a modular partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
