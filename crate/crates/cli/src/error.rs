use agprop::boolfn::BoolFnError;
use agprop::codes::CodeError;
use agprop::pipeline::PipelineError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<BoolFnError> for CliError {
    fn from(e: BoolFnError) -> Self {
        match e {
            BoolFnError::Budget { .. } | BoolFnError::Code(CodeError::BudgetExceeded { .. }) => {
                CliError::Budget(e.to_string())
            }
            BoolFnError::Dimension(_) => CliError::Validation(e.to_string()),
            _ => CliError::Io(e.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CodeError::Format(_) | CodeError::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        if e.is_budget() {
            return CliError::Budget(e.to_string());
        }
        match e {
            PipelineError::UnknownPreset(_) => CliError::Usage(e.to_string()),
            PipelineError::Json(_) | PipelineError::BoolFn(BoolFnError::Io(_) | BoolFnError::Format(_)) => {
                CliError::Io(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("malformed JSON: {e}"))
    }
}
