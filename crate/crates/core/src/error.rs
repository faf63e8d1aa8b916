use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("composition mismatch: {0}")]
    Composition(String),
    #[error("invalid diagram at slice {slice}: {msg}")]
    Diagram { slice: usize, msg: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("width {width} exceeds the sweep cap {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("convention fault: {0}")]
    Convention(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
