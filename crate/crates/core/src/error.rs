use thiserror::Error;

use crate::kl::FinitaryFunction;
use crate::ordinal::Ordinal;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("index {index} out of range (length {length})")]
    IndexOutOfRange { index: Ordinal, length: Ordinal },
    #[error("sequences are equal")]
    EqualSequences,
    #[error("one sequence is a proper prefix of the other")]
    ProperPrefix,
    #[error("affine image leaves [0,1]: {0}")]
    Range(String),
    #[error("sequences not decreasing across the join: {0}")]
    NotDecreasingAcrossJoin(String),
    #[error("anchor error: {0}")]
    Anchor(String),
    #[error("point does not match the order expression: {0}")]
    Shape(String),
    #[error("infinite product image has no segment presentation: {0}")]
    UnpresentableTail(String),
    #[error("tree labels invalid: {0}")]
    Label(String),
    #[error("no admissible rational between {lo} and {hi}")]
    EmptyAdmissibleInterval { lo: String, hi: String },
    #[error("{0} is not a limit point of the space")]
    NotALimitPoint(Ordinal),
    #[error("negative value: {0}")]
    NegativeResult(String),
    #[error("decomposition budget exceeded after {steps} stages")]
    BudgetExceeded {
        steps: usize,
        /// The `g` functions computed before giving up.
        trace: Vec<FinitaryFunction>,
    },
    #[error("partial sums have not stabilized at a limit stage")]
    NotStabilized,
    #[error("functions are not strictly pointwise ordered")]
    NotComparable,
    #[error("parity rule violated at stage {delta}: {detail}")]
    ParityViolation { delta: Ordinal, detail: String },
    #[error("approximants do not strictly decrease at precision {0}")]
    PrecisionTooLow(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::EqualSequences => "equal_sequences",
            Error::ProperPrefix => "proper_prefix",
            Error::Range(_) => "range",
            Error::NotDecreasingAcrossJoin(_) => "not_decreasing_across_join",
            Error::Anchor(_) => "anchor",
            Error::Shape(_) => "shape",
            Error::UnpresentableTail(_) => "unpresentable_tail",
            Error::Label(_) => "label",
            Error::EmptyAdmissibleInterval { .. } => "empty_admissible_interval",
            Error::NotALimitPoint(_) => "not_a_limit_point",
            Error::NegativeResult(_) => "negative_result",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotStabilized => "not_stabilized",
            Error::NotComparable => "not_comparable",
            Error::ParityViolation { .. } => "parity_violation",
            Error::PrecisionTooLow(_) => "precision_too_low",
            Error::Precondition(_) => "precondition",
        }
    }

    /// Exit status used by batch front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::ParityViolation { .. } | Error::EmptyAdmissibleInterval { .. } => 3,
            _ => 1,
        }
    }
}
