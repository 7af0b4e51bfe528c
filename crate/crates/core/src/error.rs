use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate state: amplitude vector has zero norm")]
    DegenerateState,

    #[error("value {value} outside admissible range [{min}, {max}]")]
    Range { value: f64, min: f64, max: f64 },

    #[error("{what} index {index} out of range (expected {min}..={max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error(
        "generator family does not close: worst residual {residual:e} for pair ({first}, {second})"
    )]
    Closure {
        residual: f64,
        first: usize,
        second: usize,
    },

    #[error("unknown generator family: {0}")]
    UnknownFamily(String),
}
