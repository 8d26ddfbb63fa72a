use thiserror::Error;

/// Expression parse failures. Offsets are byte offsets into the source.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

/// Numerical failures of the geometric and algebraic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation of `{node}` failed: {message}")]
    Eval { node: String, message: String },
    #[error("singular spinor: |ψψ̃| = {norm:e}")]
    SingularSpinor { norm: f64 },
    #[error("singular metric at {point:?}")]
    SingularMetric { point: [f64; 4] },
    #[error("singular tetrad at {point:?}")]
    SingularTetrad { point: [f64; 4] },
    #[error("metric signature at {point:?} is not (+,-,-,-)")]
    Signature { point: [f64; 4] },
    #[error("tetrad does not reproduce the metric at {point:?} (residual {residual:e})")]
    TetradMismatch { point: [f64; 4], residual: f64 },
    #[error("vector field is not Killing (residual {residual:e})")]
    KillingViolation { residual: f64 },
    #[error("flow left the domain at t = {time} (point {point:?})")]
    FlowEscape { time: f64, point: [f64; 4] },
}

/// Scene loading and validation failures.
#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("scene format error: {0}")]
    Format(String),
    #[error("expression error in {location}: {source}")]
    Expression {
        location: String,
        #[source]
        source: ParseError,
    },
    #[error("validation failed: {0}")]
    Validation(String),
}
