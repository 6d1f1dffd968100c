use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate edge ({u}, {v}) on line {line}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("vertex {vertex} out of range for {n} vertices{}", line_suffix(*.line))]
    Range {
        vertex: usize,
        n: usize,
        line: Option<usize>,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{n} spins exceeds the simulation cap of {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}
