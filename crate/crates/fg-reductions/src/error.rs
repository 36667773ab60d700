use fg_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("halting convention violated: {0}")]
    Convention(ConventionViolation),
    #[error("machine did not halt within {max_steps} steps")]
    StepBudget { max_steps: usize },
    #[error("grid side {side} exceeds cap {cap}")]
    SideCap { side: u64, cap: u64 },
    #[error("factor size {size} exceeds cap {cap}")]
    FactorCap { size: usize, cap: usize },
    #[error("configuration count exceeds cap {cap}")]
    ConfigCap { cap: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl ReductionError {
    pub fn is_cap(&self) -> bool {
        match self {
            ReductionError::SideCap { .. }
            | ReductionError::FactorCap { .. }
            | ReductionError::ConfigCap { .. }
            | ReductionError::StepBudget { .. } => true,
            ReductionError::Core(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// First assumption of the halting convention that a run breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConventionViolation {
    /// The head tried to move left of cell 1.
    FellOffLeft { step: usize },
    /// Halted with the head at a cell other than 1.
    HeadNotLeftmost { cell: usize },
    /// Halted with a non-blank symbol in cell 1.
    LeftmostNotBlank { symbol: String },
}

impl std::fmt::Display for ConventionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConventionViolation::FellOffLeft { step } => {
                write!(f, "head moved left of cell 1 at step {step}")
            }
            ConventionViolation::HeadNotLeftmost { cell } => {
                write!(f, "head not leftmost (halted at cell {cell})")
            }
            ConventionViolation::LeftmostNotBlank { symbol } => {
                write!(f, "leftmost not blank (cell 1 holds `{symbol}`)")
            }
        }
    }
}
